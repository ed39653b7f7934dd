#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hurwitz/errors.hpp"
#include "hurwitz/partition.hpp"

namespace hurwitz {

// A permutation of {1, ..., d}.  Stored as the image sequence: the entry at
// index i-1 is the image of i, so comparison order is lexicographic on the
// image sequence.
class Permutation {
public:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int d = static_cast<int>(images_.size());
    if (d < 1)
      throw std::invalid_argument("permutation degree must be at least 1");
    std::vector<bool> seen(static_cast<std::size_t>(d), false);
    for (int v : images_) {
      if (v < 1 || v > d)
        throw std::invalid_argument("permutation image out of range");
      if (seen[static_cast<std::size_t>(v - 1)])
        throw std::invalid_argument("permutation image repeated");
      seen[static_cast<std::size_t>(v - 1)] = true;
    }
  }

  static Permutation identity(int degree) {
    if (degree < 1)
      throw std::invalid_argument("permutation degree must be at least 1");
    std::vector<int> images(static_cast<std::size_t>(degree));
    std::iota(images.begin(), images.end(), 1);
    return Permutation(std::move(images));
  }

  int degree() const noexcept { return static_cast<int>(images_.size()); }

  // Image of a point, 1-based.
  int apply(int point) const {
    if (point < 1 || point > degree())
      throw std::invalid_argument("point out of range");
    return images_[static_cast<std::size_t>(point - 1)];
  }

  const std::vector<int>& images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (int i = 0; i < degree(); ++i)
      if (images_[static_cast<std::size_t>(i)] != i + 1)
        return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < degree(); ++i)
      inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)] - 1)] = i + 1;
    return Permutation(std::move(inv));
  }

  // Disjoint cycles in canonical form: each cycle starts at its smallest
  // point, cycles ordered by smallest point.  Fixed points included only
  // when `include_fixed`.
  std::vector<std::vector<int>> cycles(bool include_fixed = false) const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size(), false);
    for (int start = 1; start <= degree(); ++start) {
      if (seen[static_cast<std::size_t>(start - 1)])
        continue;
      std::vector<int> cycle;
      int p = start;
      do {
        seen[static_cast<std::size_t>(p - 1)] = true;
        cycle.push_back(p);
        p = images_[static_cast<std::size_t>(p - 1)];
      } while (p != start);
      if (cycle.size() > 1 || include_fixed)
        out.push_back(std::move(cycle));
    }
    return out;
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> images_;
};

// Left-to-right composition: apply `a`, then `b`.
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("compose needs equal degrees");
  std::vector<int> images(a.images().size());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[i] = b.images()[static_cast<std::size_t>(a.images()[i] - 1)];
  return Permutation(std::move(images));
}

// Cycle lengths, fixed points included, as a partition of the degree.
inline Partition cycle_type(const Permutation& p) {
  std::vector<int> lengths;
  for (const auto& c : p.cycles(/*include_fixed=*/true))
    lengths.push_back(static_cast<int>(c.size()));
  return Partition(std::move(lengths));
}

// Whether the group generated by `perms` acts transitively on {1, ..., d}.
// The empty set of generators is transitive only when d == 1.
inline bool is_transitive(std::span<const Permutation> perms, int degree) {
  if (degree < 1)
    throw std::invalid_argument("degree must be at least 1");
  std::vector<int> parent(static_cast<std::size_t>(degree));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int components = degree;
  for (const Permutation& p : perms) {
    if (p.degree() != degree)
      throw std::invalid_argument("is_transitive needs uniform degree");
    for (int i = 0; i < degree; ++i) {
      int a = find(i);
      int b = find(p.images()[static_cast<std::size_t>(i)] - 1);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --components;
      }
    }
  }
  return components == 1;
}

// The representative with consecutive-block cycles: type [3,2] at degree 5
// gives (1 2 3)(4 5).
inline Permutation canonical_of_type(const Partition& type) {
  std::vector<int> images(static_cast<std::size_t>(type.sum()));
  int start = 1;
  for (int len : type.parts()) {
    for (int j = 0; j < len - 1; ++j)
      images[static_cast<std::size_t>(start + j - 1)] = start + j + 1;
    images[static_cast<std::size_t>(start + len - 1 - 1)] = start;
    start += len;
  }
  return Permutation(std::move(images));
}

// |conjugacy class of type t in S_d| = d! / prod(part^mult * mult!).
inline std::uint64_t conjugacy_class_size(const Partition& type) {
  const int d = type.sum();
  std::uint64_t fact = 1;
  for (int i = 2; i <= d; ++i)
    fact *= static_cast<std::uint64_t>(i);
  std::uint64_t z = 1;
  std::size_t i = 0;
  const auto& parts = type.parts();
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i])
      ++j;
    std::uint64_t mult = j - i;
    for (std::uint64_t k = 0; k < mult; ++k)
      z *= static_cast<std::uint64_t>(parts[i]);
    for (std::uint64_t k = 2; k <= mult; ++k)
      z *= k;
    i = j;
  }
  return fact / z;
}

namespace detail {

// Emits every permutation with the given cycle lengths exactly once: the
// smallest unplaced point leads the next cycle, whose length is chosen among
// the remaining ones (once per distinct length) and whose tail runs over all
// arrangements of the other unplaced points.
template <typename Fn>
inline void for_each_of_type_unordered(const Partition& type, Fn&& emit) {
  const int d = type.sum();
  // (length, multiplicity), lengths descending.
  std::vector<std::pair<int, int>> remaining;
  for (int len : type.parts()) {
    if (!remaining.empty() && remaining.back().first == len)
      ++remaining.back().second;
    else
      remaining.emplace_back(len, 1);
  }
  std::vector<int> images(static_cast<std::size_t>(d), 0);
  std::vector<bool> used(static_cast<std::size_t>(d) + 1, false);

  auto outer = [&](auto&& self) -> void {
    int leader = 0;
    for (int p = 1; p <= d; ++p) {
      if (!used[static_cast<std::size_t>(p)]) {
        leader = p;
        break;
      }
    }
    if (leader == 0) {
      emit(images);
      return;
    }
    used[static_cast<std::size_t>(leader)] = true;
    for (auto& [len, count] : remaining) {
      if (count == 0)
        continue;
      --count;
      // Extend the chain leader -> ... one point at a time; closing the
      // cycle happens when the chain holds `len` points.
      auto chain = [&](auto&& grow, int cur, int left) -> void {
        if (left == 0) {
          images[static_cast<std::size_t>(cur - 1)] = leader;
          self(self);
          images[static_cast<std::size_t>(cur - 1)] = 0;
          return;
        }
        for (int q = 1; q <= d; ++q) {
          if (used[static_cast<std::size_t>(q)])
            continue;
          used[static_cast<std::size_t>(q)] = true;
          images[static_cast<std::size_t>(cur - 1)] = q;
          grow(grow, q, left - 1);
          images[static_cast<std::size_t>(cur - 1)] = 0;
          used[static_cast<std::size_t>(q)] = false;
        }
      };
      chain(chain, leader, len - 1);
      ++count;
    }
    used[static_cast<std::size_t>(leader)] = false;
  };
  outer(outer);
}

} // namespace detail

// Every permutation of degree type.sum() with the given cycle type, in
// lexicographic order of the image sequence.  Sizes stay desk-scale
// (d <= 9 gives at most 9!/9 elements), so the class is materialized.
inline std::vector<Permutation> enumerate_of_type(const Partition& type) {
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(conjugacy_class_size(type)));
  detail::for_each_of_type_unordered(
      type, [&](const std::vector<int>& images) { out.emplace_back(images); });
  std::sort(out.begin(), out.end());
  return out;
}

// Cycle notation with fixed points omitted: "(1 2)(3 4)".  The identity
// formats as "()".
inline std::string format_cycles(const Permutation& p) {
  const auto cycles = p.cycles();
  if (cycles.empty())
    return "()";
  std::string out;
  for (const auto& cycle : cycles) {
    out += '(';
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i)
        out += ' ';
      out += std::to_string(cycle[i]);
    }
    out += ')';
  }
  return out;
}

// Parses cycle notation at a given degree.  Accepts "()" and "" for the
// identity; rejects out-of-range and repeated points.
inline Permutation parse_cycles(std::string_view text, int degree) {
  if (degree < 1)
    throw std::invalid_argument("permutation degree must be at least 1");
  std::vector<int> images(static_cast<std::size_t>(degree));
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> seen(static_cast<std::size_t>(degree) + 1, false);
  std::size_t pos = 0;
  auto skip_spaces = [&] {
    while (pos < text.size() && text[pos] == ' ')
      ++pos;
  };
  skip_spaces();
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw parse_error("expected '('", pos);
    ++pos;
    std::vector<int> cycle;
    skip_spaces();
    while (pos < text.size() && text[pos] != ')') {
      std::size_t at = pos;
      int point = detail::parse_int(text, pos, 0);
      if (point < 1 || point > degree)
        throw parse_error("point out of range", at);
      if (seen[static_cast<std::size_t>(point)])
        throw parse_error("point repeated", at);
      seen[static_cast<std::size_t>(point)] = true;
      cycle.push_back(point);
      skip_spaces();
    }
    if (pos >= text.size())
      throw parse_error("unterminated cycle", pos);
    ++pos; // ')'
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[static_cast<std::size_t>(cycle[i] - 1)] =
          cycle[(i + 1) % cycle.size()];
    skip_spaces();
  }
  return Permutation(std::move(images));
}

} // namespace hurwitz
