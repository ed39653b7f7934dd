#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <string>
#include <vector>

#include "hurwitz/realizability.hpp"
#include "hurwitz/triplet.hpp"

using hurwitz::Attribution;
using hurwitz::BranchTriplet;
using hurwitz::DecideOptions;
using hurwitz::MonodromyCertificate;
using hurwitz::Partition;
using hurwitz::Permutation;
using hurwitz::SearchBudget;
using hurwitz::VerdictKind;

namespace {

std::vector<std::string> cert_strings(const MonodromyCertificate& cert) {
  std::vector<std::string> out;
  for (const Permutation& p : cert.monodromies)
    out.push_back(hurwitz::format_cycles(p));
  return out;
}

// Independent oracle: enumerate raw tuples, one full conjugacy class per
// partition slot, and test product identity plus transitivity directly.
// No class pinning, no forced slot, no pruning.
bool brute_force_realizable(const BranchTriplet& t) {
  if (!compatible_genus(t))
    return false;
  std::vector<std::vector<Permutation>> classes;
  for (const Partition& p : t.partitions())
    classes.push_back(hurwitz::enumerate_of_type(p));
  std::vector<Permutation> tuple;
  auto rec = [&](auto&& self, std::size_t slot) -> bool {
    if (slot == classes.size()) {
      Permutation product = tuple.front();
      for (std::size_t i = 1; i < tuple.size(); ++i)
        product = compose(product, tuple[i]);
      return product.is_identity() && is_transitive(tuple, t.degree());
    }
    for (const Permutation& cand : classes[slot]) {
      tuple.push_back(cand);
      if (self(self, slot + 1))
        return true;
      tuple.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

} // namespace

TEST_CASE("sufficient condition with a total branch point") {
  CHECK(hurwitz::check_eks(hurwitz::parse_triplet("3:3:3/2+1/2+1")));
  CHECK(hurwitz::check_eks(hurwitz::parse_triplet("3:3:3/3/3")));
  CHECK(hurwitz::check_eks(hurwitz::parse_triplet("5:3:5/5/5")));
  // No partition of length one.
  CHECK_FALSE(hurwitz::check_eks(hurwitz::parse_triplet("3:4:2+1/2+1/2+1/2+1")));
  CHECK_FALSE(hurwitz::check_eks(hurwitz::parse_triplet("4:3:3+1/2+2/2+2")));
}

TEST_CASE("sufficient condition with many branch points on the sphere") {
  CHECK(hurwitz::check_baranski(hurwitz::parse_triplet("3:4:2+1/2+1/2+1/2+1")));
  CHECK(hurwitz::check_baranski(hurwitz::parse_triplet("2:2:2/2")));
  CHECK_FALSE(hurwitz::check_baranski(hurwitz::parse_triplet("5:3:5/5/5")));
  // Enough branch points but positive genus.
  CHECK_FALSE(hurwitz::check_baranski(hurwitz::parse_triplet("2:4:2/2/2/2")));
}

TEST_CASE("decide finds the classical certificates") {
  SECTION("double coverings") {
    for (int g = 1; g <= 3; ++g) {
      const auto t = BranchTriplet(
          2, std::vector<Partition>(static_cast<std::size_t>(2 * g + 2), Partition({2})));
      const auto v = decide(t);
      REQUIRE(v.kind == VerdictKind::realizable);
      REQUIRE(v.certificate.has_value());
      CHECK(cert_strings(*v.certificate) ==
            std::vector<std::string>(static_cast<std::size_t>(2 * g + 2), "(1 2)"));
      CHECK(hurwitz::genus_of_certificate(*v.certificate) == g);
    }
  }
  SECTION("three full cycles at degree five") {
    const auto v = decide(hurwitz::parse_triplet("5:3:5/5/5"));
    REQUIRE(v.kind == VerdictKind::realizable);
    CHECK(v.attribution == Attribution::eks);
    REQUIRE(v.certificate.has_value());
    CHECK(cert_strings(*v.certificate) ==
          std::vector<std::string>{"(1 2 3 4 5)", "(1 2 3 4 5)", "(1 4 2 5 3)"});
    CHECK(hurwitz::genus_of_certificate(*v.certificate) == 2);
  }
  SECTION("four simple branch points at degree three") {
    const auto v = decide(hurwitz::parse_triplet("3:4:2+1/2+1/2+1/2+1"));
    REQUIRE(v.kind == VerdictKind::realizable);
    CHECK(v.attribution == Attribution::baranski);
    REQUIRE(v.certificate.has_value());
    CHECK(hurwitz::verify(*v.certificate, hurwitz::parse_triplet("3:4:2+1/2+1/2+1/2+1")));
    CHECK(hurwitz::genus_of_certificate(*v.certificate) == 0);
  }
}

TEST_CASE("the classical non-realizable exception is refuted by exhaustion") {
  const auto t = hurwitz::parse_triplet("4:3:3+1/2+2/2+2");
  REQUIRE(compatible_genus(t) == 0);
  const auto v = decide(t);
  CHECK(v.kind == VerdictKind::not_realizable);
  CHECK(v.attribution == Attribution::search);
  CHECK(v.stats.nodes > 0);
}

TEST_CASE("incompatible data is refused without search") {
  const auto v = decide(hurwitz::parse_triplet("3:3:2+1/2+1/2+1"));
  CHECK(v.kind == VerdictKind::not_realizable);
  CHECK(v.attribution == Attribution::incompatible);
  CHECK(v.stats.nodes == 0);
}

TEST_CASE("a too-small budget yields undecided, never a refusal") {
  SearchBudget tiny;
  tiny.max_nodes = 2;
  const auto v = decide(hurwitz::parse_triplet("4:3:3+1/2+2/2+2"), tiny);
  CHECK(v.kind == VerdictKind::undecided);
}

TEST_CASE("handwritten certificates verify") {
  const auto quad = hurwitz::parse_triplet("3:4:2+1/2+1/2+1/2+1");
  MonodromyCertificate cert;
  cert.degree = 3;
  for (const char* text : {"(1 2)", "(1 2)", "(1 3)", "(1 3)"})
    cert.monodromies.push_back(hurwitz::parse_cycles(text, 3));
  CHECK(hurwitz::verify(cert, quad));
  CHECK(hurwitz::genus_of_certificate(cert) == 0);

  MonodromyCertificate cycles;
  cycles.degree = 5;
  for (const char* text : {"(1 2 3 4 5)", "(1 2 3 4 5)", "(1 4 2 5 3)"})
    cycles.monodromies.push_back(hurwitz::parse_cycles(text, 5));
  CHECK(hurwitz::verify(cycles, hurwitz::parse_triplet("5:3:5/5/5")));
}

TEST_CASE("verification names the first violated invariant") {
  MonodromyCertificate bad_product;
  bad_product.degree = 3;
  bad_product.monodromies = {hurwitz::parse_cycles("(1 2)", 3),
                             hurwitz::parse_cycles("(1 3)", 3)};
  CHECK(hurwitz::verify_violation(bad_product,
                                  hurwitz::parse_triplet("3:2:2+1/2+1")) == "product");

  MonodromyCertificate split;
  split.degree = 4;
  split.monodromies = {hurwitz::parse_cycles("(1 2)", 4),
                       hurwitz::parse_cycles("(1 2)", 4)};
  CHECK(hurwitz::verify_violation(split, hurwitz::parse_triplet("4:2:2+1+1/2+1+1")) ==
        "transitivity");

  // Tampering with the degree breaks the cycle-type comparison.
  MonodromyCertificate tampered;
  tampered.degree = 4;
  for (int i = 0; i < 4; ++i)
    tampered.monodromies.push_back(hurwitz::parse_cycles("(1 2)", 4));
  CHECK(hurwitz::verify_violation(tampered, hurwitz::parse_triplet("2:4:2/2/2/2")) ==
        "cycle types");

  MonodromyCertificate wrong_count;
  wrong_count.degree = 2;
  wrong_count.monodromies = {hurwitz::parse_cycles("(1 2)", 2),
                             hurwitz::parse_cycles("(1 2)", 2)};
  CHECK(hurwitz::verify_violation(wrong_count,
                                  hurwitz::parse_triplet("2:4:2/2/2/2")) == "cycle types");
}

TEST_CASE("genus extraction requires valid monodromy data") {
  MonodromyCertificate bad;
  bad.degree = 3;
  bad.monodromies = {hurwitz::parse_cycles("(1 2)", 3),
                     hurwitz::parse_cycles("(1 3)", 3)};
  CHECK_THROWS(hurwitz::genus_of_certificate(bad));

  MonodromyCertificate split;
  split.degree = 4;
  split.monodromies = {hurwitz::parse_cycles("(1 2)", 4),
                       hurwitz::parse_cycles("(1 2)", 4)};
  CHECK_THROWS(hurwitz::genus_of_certificate(split));
}

TEST_CASE("decide agrees with the raw-tuple oracle at small degree") {
  for (int d = 2; d <= 4; ++d) {
    for (int n = 2; n <= 4; ++n) {
      for (const BranchTriplet& t : hurwitz::triplets_for(d, n)) {
        if (!compatible_genus(t))
          continue;
        const auto v = decide(t);
        REQUIRE(v.kind != VerdictKind::undecided);
        INFO(hurwitz::format_triplet(t));
        CHECK((v.kind == VerdictKind::realizable) == brute_force_realizable(t));
      }
    }
  }
}

TEST_CASE("soundness of every realizable verdict in a sweep") {
  for (int d = 2; d <= 4; ++d) {
    for (int n = 1; n <= 4; ++n) {
      for (const BranchTriplet& t : hurwitz::triplets_for(d, n)) {
        const auto v = decide(t);
        if (v.kind != VerdictKind::realizable)
          continue;
        REQUIRE(compatible_genus(t).has_value());
        REQUIRE(v.certificate.has_value());
        CHECK(hurwitz::verify(*v.certificate, t));
        CHECK(hurwitz::genus_of_certificate(*v.certificate) == *compatible_genus(t));
      }
    }
  }
}

TEST_CASE("pinning the first class is lossless") {
  DecideOptions no_pin;
  no_pin.fix_first_class = false;
  for (int d = 2; d <= 4; ++d) {
    for (int n = 2; n <= 4; ++n) {
      for (const BranchTriplet& t : hurwitz::triplets_for(d, n)) {
        if (!compatible_genus(t))
          continue;
        INFO(hurwitz::format_triplet(t));
        CHECK(decide(t).kind == decide(t, {}, no_pin).kind);
      }
    }
  }
}

TEST_CASE("fast paths never contradict the exhaustive search") {
  for (int d = 2; d <= 4; ++d) {
    for (int n = 1; n <= 4; ++n) {
      for (const BranchTriplet& t : hurwitz::triplets_for(d, n)) {
        if (!compatible_genus(t))
          continue;
        if (!hurwitz::check_eks(t) && !hurwitz::check_baranski(t))
          continue;
        INFO(hurwitz::format_triplet(t));
        CHECK(decide(t).kind == VerdictKind::realizable);
      }
    }
  }
}

TEST_CASE("verdicts and first certificates are reproducible") {
  const std::vector<const char*> inputs{"5:3:5/5/5", "3:4:2+1/2+1/2+1/2+1",
                                        "4:3:3+1/2+2/2+2", "4:4:4/4/3+1/2+1+1"};
  for (const char* text : inputs) {
    const auto t = hurwitz::parse_triplet(text);
    const auto a = decide(t);
    const auto b = decide(t);
    CHECK(a.kind == b.kind);
    CHECK(a.stats.nodes == b.stats.nodes);
    REQUIRE(a.certificate.has_value() == b.certificate.has_value());
    if (a.certificate)
      CHECK(cert_strings(*a.certificate) == cert_strings(*b.certificate));
  }
}

TEST_CASE("parallel search returns the sequential answer") {
  DecideOptions parallel;
  parallel.threads = 4;
  for (int d = 2; d <= 4; ++d) {
    for (int n = 2; n <= 4; ++n) {
      for (const BranchTriplet& t : hurwitz::triplets_for(d, n)) {
        if (!compatible_genus(t))
          continue;
        const auto seq = decide(t);
        const auto par = decide(t, {}, parallel);
        INFO(hurwitz::format_triplet(t));
        CHECK(seq.kind == par.kind);
        REQUIRE(seq.certificate.has_value() == par.certificate.has_value());
        if (seq.certificate)
          CHECK(cert_strings(*seq.certificate) == cert_strings(*par.certificate));
      }
    }
  }
}

TEST_CASE("batch deciding matches one-at-a-time deciding") {
  const auto triplets = hurwitz::triplets_for(4, 3);
  DecideOptions fanout;
  fanout.threads = 3;
  const auto batch = hurwitz::decide_all(triplets, {}, fanout);
  REQUIRE(batch.size() == triplets.size());
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const auto single = decide(triplets[i]);
    CHECK(batch[i].kind == single.kind);
    CHECK(batch[i].stats.nodes == single.stats.nodes);
  }
}
