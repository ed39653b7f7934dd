#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz {

// An integer partition: a multiset of positive parts, stored non-increasing.
// `sum()` is the partitioned integer, `length()` the number of parts.
class Partition {
public:
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty())
      throw std::invalid_argument("partition needs at least one part");
    for (int p : parts_)
      if (p < 1)
        throw std::invalid_argument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    sum_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  const std::vector<int>& parts() const noexcept { return parts_; }
  int sum() const noexcept { return sum_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }

  // The partition of d into d ones; branch data made of these carries no
  // branching at all.
  bool is_trivial() const noexcept { return parts_.front() == 1; }

  // Lexicographic on the non-increasing part sequence ([4] > [3,1] > [2,2]).
  friend auto operator<=>(const Partition&, const Partition&) = default;

private:
  std::vector<int> parts_;
  int sum_;
};

// All partitions of d in reverse-lexicographic order:
// [d] first, [1,...,1] last.  d = 4 yields [4],[3,1],[2,2],[2,1,1],[1,1,1,1].
inline std::vector<Partition> partitions_of(int d) {
  if (d < 1)
    throw std::invalid_argument("partitions_of needs d >= 1");
  std::vector<Partition> out;
  std::vector<int> parts{d};
  for (;;) {
    out.emplace_back(parts);
    // Find the rightmost part > 1; redistribute everything after it.
    int k = static_cast<int>(parts.size()) - 1;
    while (k >= 0 && parts[k] == 1)
      --k;
    if (k < 0)
      break;
    int rest = static_cast<int>(parts.size()) - 1 - k + 1; // the 1s plus 1
    parts.resize(static_cast<std::size_t>(k) + 1);
    parts[static_cast<std::size_t>(k)] -= 1;
    int cap = parts[static_cast<std::size_t>(k)];
    while (rest > 0) {
      int t = std::min(cap, rest);
      parts.push_back(t);
      rest -= t;
    }
  }
  return out;
}

// The nontrivial ones, same order.  Empty only for d = 1.
inline std::vector<Partition> nontrivial_partitions_of(int d) {
  std::vector<Partition> out = partitions_of(d);
  std::erase_if(out, [](const Partition& p) { return p.is_trivial(); });
  return out;
}

// Canonical text form: parts joined by '+', non-increasing ("2+1+1").
inline std::string format_partition(const Partition& p) {
  std::string out;
  for (std::size_t i = 0; i < p.parts().size(); ++i) {
    if (i)
      out += '+';
    out += std::to_string(p.parts()[i]);
  }
  return out;
}

namespace detail {

// Unsigned integer at text[pos...]; advances pos.  `base` offsets error
// positions when the token is embedded in a larger string.
inline int parse_int(std::string_view text, std::size_t& pos, std::size_t base) {
  if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
    throw parse_error("expected a number", base + pos);
  long value = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    value = value * 10 + (text[pos] - '0');
    if (value > 1'000'000)
      throw parse_error("number too large", base + pos);
    ++pos;
  }
  return static_cast<int>(value);
}

// Partition token: either "2+1+1" or bracket form "[1,2]".  Parts may come
// in any order; the Partition constructor normalizes.  Consumes the whole
// of text[pos..end) up to the first character that cannot continue the
// token; the caller checks what follows.
inline Partition parse_partition_token(std::string_view text, std::size_t& pos,
                                       std::size_t base) {
  std::vector<int> parts;
  auto take_part = [&] {
    std::size_t at = pos;
    int part = parse_int(text, pos, base);
    if (part < 1)
      throw parse_error("partition parts must be positive", base + at);
    parts.push_back(part);
  };
  if (pos < text.size() && text[pos] == '[') {
    ++pos;
    for (;;) {
      take_part();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    if (pos >= text.size() || text[pos] != ']')
      throw parse_error("expected ']' in partition", base + pos);
    ++pos;
  } else {
    for (;;) {
      take_part();
      if (pos < text.size() && text[pos] == '+') {
        ++pos;
        continue;
      }
      break;
    }
  }
  return Partition(std::move(parts));
}

} // namespace detail

// Parses a standalone partition ("2+1+1" or "[1,2]"); the whole string must
// be consumed.
inline Partition parse_partition(std::string_view text) {
  std::size_t pos = 0;
  Partition p = detail::parse_partition_token(text, pos, 0);
  if (pos != text.size())
    throw parse_error("trailing characters after partition", pos);
  return p;
}

} // namespace hurwitz
