#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hurwitz/errors.hpp"
#include "hurwitz/partition.hpp"

namespace hurwitz {

// Abstract branch data for a degree-d covering of the sphere: an unordered
// collection of n nontrivial partitions of d, one per branch point.
// Partitions are kept sorted in reverse-lexicographic order (the same order
// partitions_of emits), which is the canonical form used for text output
// and cache keys.
class BranchTriplet {
public:
  BranchTriplet(int degree, std::vector<Partition> partitions)
      : degree_(degree), pi_(std::move(partitions)) {
    if (degree_ < 2)
      throw std::invalid_argument("branch data needs degree >= 2");
    if (pi_.empty())
      throw std::invalid_argument("branch data needs at least one partition");
    for (const Partition& p : pi_) {
      if (p.sum() != degree_)
        throw std::invalid_argument("every partition must sum to the degree");
      if (p.is_trivial())
        throw std::invalid_argument("branch partitions must be nontrivial");
    }
    std::sort(pi_.begin(), pi_.end(), std::greater<>());
  }

  int degree() const noexcept { return degree_; }
  int branch_count() const noexcept { return static_cast<int>(pi_.size()); }
  const std::vector<Partition>& partitions() const noexcept { return pi_; }

  friend auto operator<=>(const BranchTriplet&, const BranchTriplet&) = default;

private:
  int degree_;
  std::vector<Partition> pi_;
};

// Total length m = sum of the partition lengths.
inline int total_length(const BranchTriplet& t) {
  int m = 0;
  for (const Partition& p : t.partitions())
    m += p.length();
  return m;
}

// The genus forced by chi(M) - m = d(2 - n), i.e. g = (d(n-2) - m + 2) / 2,
// when that is a non-negative integer; std::nullopt otherwise (no closed
// orientable surface is compatible with the data).
inline std::optional<int> compatible_genus(const BranchTriplet& t) {
  const int twice = t.degree() * (t.branch_count() - 2) - total_length(t) + 2;
  if (twice < 0 || twice % 2 != 0)
    return std::nullopt;
  return twice / 2;
}

// n >= 3: the base sphere minus the branch points carries a hyperbolic
// metric, so area-based complexity is finite.
inline bool is_hyperbolic(const BranchTriplet& t) {
  return t.branch_count() >= 3;
}

// Every partition has length >= d - 1, i.e. every branch point has at most
// one ramified preimage (necessarily a double point, since the partitions
// are nontrivial).
inline bool is_simple(const BranchTriplet& t) {
  for (const Partition& p : t.partitions())
    if (p.length() < t.degree() - 1)
      return false;
  return true;
}

// Canonical text form: d ":" n ":" partitions joined by "/", partitions in
// canonical order, e.g. "3:3:3/2+1/2+1".
inline std::string format_triplet(const BranchTriplet& t) {
  std::string out = std::to_string(t.degree());
  out += ':';
  out += std::to_string(t.branch_count());
  out += ':';
  for (int i = 0; i < t.branch_count(); ++i) {
    if (i)
      out += '/';
    out += format_partition(t.partitions()[static_cast<std::size_t>(i)]);
  }
  return out;
}

// Parses "d:n:partition/partition/...".  Partition tokens accept both the
// "2+1" and the bracket "[1,2]" form; the declared n must match the number
// of partitions and every partition must sum to d.  No whitespace.
inline BranchTriplet parse_triplet(std::string_view text) {
  std::size_t pos = 0;
  const int d = detail::parse_int(text, pos, 0);
  if (pos >= text.size() || text[pos] != ':')
    throw parse_error("expected ':' after degree", pos);
  ++pos;
  const int n = detail::parse_int(text, pos, 0);
  if (pos >= text.size() || text[pos] != ':')
    throw parse_error("expected ':' after branch count", pos);
  ++pos;
  if (d < 2)
    throw parse_error("degree must be at least 2", 0);
  if (n < 1)
    throw parse_error("branch count must be at least 1", 0);
  std::vector<Partition> pi;
  for (;;) {
    std::size_t at = pos;
    Partition p = detail::parse_partition_token(text, pos, 0);
    if (p.sum() != d)
      throw parse_error("partition does not sum to the degree", at);
    if (p.is_trivial())
      throw parse_error("partition is trivial", at);
    pi.push_back(std::move(p));
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      continue;
    }
    break;
  }
  if (pos != text.size())
    throw parse_error("trailing characters after triplet", pos);
  if (static_cast<int>(pi.size()) != n)
    throw parse_error("declared branch count does not match the partitions", 0);
  return BranchTriplet(d, std::move(pi));
}

namespace detail {

// Multisets of `slots` nontrivial partitions of d, taken from `pool`
// (reverse-lexicographic), emitted with non-increasing partition sequences,
// i.e. already in canonical order.  When `target_length` is set, only
// multisets whose lengths sum to it survive; the recursion prunes with the
// per-slot length range [1, d-1].
template <typename Fn>
inline void emit_partition_multisets(const std::vector<Partition>& pool, int d,
                                     int slots, std::optional<int> target_length,
                                     std::vector<Partition>& chosen, std::size_t from,
                                     int length_so_far, Fn&& emit) {
  if (slots == 0) {
    if (!target_length || length_so_far == *target_length)
      emit(chosen);
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i) {
    const int len = pool[i].length();
    if (target_length) {
      const int rest = *target_length - length_so_far - len;
      if (rest < slots - 1 || rest > (slots - 1) * (d - 1))
        continue;
    }
    chosen.push_back(pool[i]);
    emit_partition_multisets(pool, d, slots - 1, target_length, chosen, i,
                             length_so_far + len, emit);
    chosen.pop_back();
  }
}

} // namespace detail

// All branch data with the given degree and branch count, canonical order.
inline std::vector<BranchTriplet> triplets_for(int d, int n) {
  if (d < 2 || n < 1)
    throw std::invalid_argument("triplets_for needs d >= 2 and n >= 1");
  const auto pool = nontrivial_partitions_of(d);
  std::vector<BranchTriplet> out;
  std::vector<Partition> chosen;
  detail::emit_partition_multisets(pool, d, n, std::nullopt, chosen, 0, 0,
                                   [&](const std::vector<Partition>& pi) {
                                     out.emplace_back(d, pi);
                                   });
  return out;
}

// Same, restricted to total length m.
inline std::vector<BranchTriplet> triplets_with_total_length(int d, int n, int m) {
  if (d < 2 || n < 1)
    throw std::invalid_argument("triplets_with_total_length needs d >= 2, n >= 1");
  const auto pool = nontrivial_partitions_of(d);
  std::vector<BranchTriplet> out;
  std::vector<Partition> chosen;
  detail::emit_partition_multisets(pool, d, n, m, chosen, 0, 0,
                                   [&](const std::vector<Partition>& pi) {
                                     out.emplace_back(d, pi);
                                   });
  return out;
}

} // namespace hurwitz
