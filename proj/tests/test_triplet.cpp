#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

#include "hurwitz/partition.hpp"
#include "hurwitz/triplet.hpp"

using hurwitz::BranchTriplet;
using hurwitz::Partition;

TEST_CASE("construction validates degree and partitions") {
  CHECK_THROWS(BranchTriplet(1, {}));
  CHECK_THROWS(BranchTriplet(3, {}));
  CHECK_THROWS(BranchTriplet(3, {Partition({1, 1, 1})}));
  CHECK_THROWS(BranchTriplet(3, {Partition({2})}));
  CHECK(BranchTriplet(3, {Partition({3})}).branch_count() == 1);
}

TEST_CASE("total length sums the partition lengths") {
  const BranchTriplet t(3, {Partition({3}), Partition({2, 1}), Partition({2, 1})});
  CHECK(total_length(t) == 5);
  const BranchTriplet s(2, {Partition({2}), Partition({2}), Partition({2}),
                            Partition({2})});
  CHECK(total_length(s) == 4);
}

TEST_CASE("compatible genus follows the degree-branching balance") {
  const BranchTriplet sphere(3, {Partition({3}), Partition({2, 1}), Partition({2, 1})});
  CHECK(compatible_genus(sphere) == 0);

  // {[d],[d],[d]} at odd d = 2g+1 sits on genus g.
  for (int g = 1; g <= 3; ++g) {
    const int d = 2 * g + 1;
    const BranchTriplet t(d, std::vector<Partition>(3, Partition({d})));
    CHECK(compatible_genus(t) == g);
  }

  // Double coverings branched over 2g+2 points sit on genus g.
  for (int g = 0; g <= 4; ++g) {
    const BranchTriplet t(
        2, std::vector<Partition>(static_cast<std::size_t>(2 * g + 2), Partition({2})));
    CHECK(compatible_genus(t) == g);
  }

  const BranchTriplet odd(3, std::vector<Partition>(3, Partition({2, 1})));
  CHECK_FALSE(compatible_genus(odd).has_value());
}

TEST_CASE("compatibility forces parity and the genus bound") {
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= 5; ++n) {
      for (const BranchTriplet& t : hurwitz::triplets_for(d, n)) {
        const auto g = compatible_genus(t);
        const int m = total_length(t);
        if (g) {
          CHECK((d * (n - 2) - m) % 2 == 0);
          CHECK(m <= d * (n - 2) + 2);
          // The identity linking branching to complexity.
          CHECK(2 * d * (n - 2) == 2 * (m + 2 * *g - 2));
          CHECK(n <= m);
        }
      }
    }
  }
}

TEST_CASE("hyperbolic means at least three branch points") {
  CHECK_FALSE(is_hyperbolic(BranchTriplet(2, {Partition({2}), Partition({2})})));
  CHECK(is_hyperbolic(BranchTriplet(3, std::vector<Partition>(3, Partition({3})))));
}

TEST_CASE("simplicity means near-identity partitions everywhere") {
  CHECK(is_simple(BranchTriplet(3, std::vector<Partition>(4, Partition({2, 1})))));
  CHECK(is_simple(BranchTriplet(2, {Partition({2}), Partition({2})})));
  CHECK_FALSE(is_simple(BranchTriplet(3, {Partition({3}), Partition({2, 1}),
                                          Partition({2, 1})})));
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= 5; ++n) {
      for (const BranchTriplet& t : hurwitz::triplets_for(d, n)) {
        if (!is_simple(t))
          continue;
        CHECK(total_length(t) == n * (d - 1));
        const auto g = compatible_genus(t);
        if (g)
          CHECK(2 - 2 * *g == 2 * d - n);
      }
    }
  }
}

TEST_CASE("triplet text round-trips through the canonical form") {
  const BranchTriplet t = hurwitz::parse_triplet("3:3:3/1+2/1+2");
  CHECK(t.degree() == 3);
  CHECK(t.branch_count() == 3);
  CHECK(hurwitz::format_triplet(t) == "3:3:3/2+1/2+1");
  CHECK(hurwitz::parse_triplet("3:3:[3]/[1,2]/[2,1]") == t);
  CHECK(hurwitz::parse_triplet("3:3:2+1/2+1/3") == t);
  CHECK(hurwitz::parse_triplet(hurwitz::format_triplet(t)) == t);

  for (int d = 2; d <= 5; ++d)
    for (int n = 1; n <= 4; ++n)
      for (const BranchTriplet& s : hurwitz::triplets_for(d, n))
        CHECK(hurwitz::parse_triplet(hurwitz::format_triplet(s)) == s);
}

TEST_CASE("triplet parsing rejects malformed text") {
  CHECK_THROWS_AS(hurwitz::parse_triplet(""), hurwitz::parse_error);
  CHECK_THROWS_AS(hurwitz::parse_triplet("3:3"), hurwitz::parse_error);
  CHECK_THROWS_AS(hurwitz::parse_triplet("3:2:3/2+1/2+1"), hurwitz::parse_error);
  CHECK_THROWS_AS(hurwitz::parse_triplet("3:3:3/2+1/2+2"), hurwitz::parse_error);
  CHECK_THROWS_AS(hurwitz::parse_triplet("3:3:3/2+1/1+1+1"), hurwitz::parse_error);
  CHECK_THROWS_AS(hurwitz::parse_triplet("1:1:1"), hurwitz::parse_error);
  CHECK_THROWS_AS(hurwitz::parse_triplet("3:3:3/2+1/2+1 "), hurwitz::parse_error);
  CHECK_THROWS_AS(hurwitz::parse_triplet("3:0:"), hurwitz::parse_error);
}

TEST_CASE("enumeration counts match hand counts") {
  // Nontrivial partitions of 4: [4], [3,1], [2,2], [2,1,1].
  CHECK(hurwitz::triplets_for(4, 3).size() == 20); // multisets of size 3 from 4
  CHECK(hurwitz::triplets_for(2, 5).size() == 1);

  int compatible = 0;
  for (const BranchTriplet& t : hurwitz::triplets_for(4, 3))
    if (compatible_genus(t))
      ++compatible;
  // m must be even and at most 6: two triplets at m = 4 (genus 1) plus six
  // at m = 6 (genus 0).
  CHECK(compatible == 8);

  // Restricting by total length agrees with filtering.
  const auto direct = hurwitz::triplets_with_total_length(4, 3, 6);
  int filtered = 0;
  for (const BranchTriplet& t : hurwitz::triplets_for(4, 3))
    if (total_length(t) == 6)
      ++filtered;
  CHECK(static_cast<int>(direct.size()) == filtered);
  CHECK(direct.size() == 6);
}
