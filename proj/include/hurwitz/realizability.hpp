#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hurwitz/partition.hpp"
#include "hurwitz/permutation.hpp"
#include "hurwitz/triplet.hpp"

namespace hurwitz {

// Node ceiling plus wall clock; whichever trips first ends the search with
// an Undecided verdict, never a silent NotRealizable.
struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  std::chrono::milliseconds max_time{60'000};
};

struct DecideOptions {
  // Run a tuple search even after a sufficient condition fired, so the
  // verdict can carry a concrete witness.
  bool want_certificate = true;
  // Consult the sufficient conditions before searching.
  bool use_fast_paths = true;
  // Pin the largest conjugacy class to its canonical representative
  // (simultaneous conjugation makes that lossless); off only for oracle
  // comparisons in tests.
  bool fix_first_class = true;
  // Workers for splitting the first enumerated class.  The winning
  // certificate is the lowest-enumeration-index one, so verdict and witness
  // are reproducible at a fixed thread count; node budgets are split evenly
  // across workers, so near the node ceiling different thread counts may
  // decide differently.
  int threads = 1;
};

// A tuple of permutations with prescribed cycle types, product (left to
// right) the identity, generating a transitive group: the monodromy of a
// genuine branched covering.
struct MonodromyCertificate {
  int degree;
  std::vector<Permutation> monodromies;
};

enum class VerdictKind { realizable, not_realizable, undecided };

// What decided the verdict: the compatibility pre-check, one of the
// sufficient conditions, or the exhaustive tuple search.
enum class Attribution { incompatible, eks, baranski, search };

struct SearchStats {
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

struct RealizabilityVerdict {
  VerdictKind kind;
  std::optional<MonodromyCertificate> certificate;
  Attribution attribution;
  SearchStats stats;
};

// Sufficient condition (Edmonds, Kulkarni, Stong): some partition of length
// one, and nd - m even with nd - m >= 2d - 2.
inline bool check_eks(const BranchTriplet& t) {
  bool has_total_branch = false;
  for (const Partition& p : t.partitions())
    if (p.length() == 1)
      has_total_branch = true;
  const int excess = t.branch_count() * t.degree() - total_length(t);
  return has_total_branch && excess % 2 == 0 && excess >= 2 * t.degree() - 2;
}

// Sufficient condition (Baranski): at least as many branch points as the
// degree, on the sphere.
inline bool check_baranski(const BranchTriplet& t) {
  return t.branch_count() >= t.degree() && compatible_genus(t) == 0;
}

// Genus of the covering surface a valid certificate presents, from
// chi = m - d(n - 2) with m the total cycle count (fixed points included).
// Throws if the certificate is not valid monodromy data.
inline int genus_of_certificate(const MonodromyCertificate& cert) {
  const int d = cert.degree;
  if (d < 1)
    throw std::invalid_argument("certificate degree must be at least 1");
  if (cert.monodromies.empty())
    throw std::invalid_argument("certificate needs at least one monodromy");
  for (const Permutation& p : cert.monodromies)
    if (p.degree() != d)
      throw std::invalid_argument("certificate monodromy has the wrong degree");
  Permutation product = cert.monodromies.front();
  for (std::size_t i = 1; i < cert.monodromies.size(); ++i)
    product = compose(product, cert.monodromies[i]);
  if (!product.is_identity())
    throw std::invalid_argument("certificate product is not the identity");
  if (!is_transitive(cert.monodromies, d))
    throw std::invalid_argument("certificate does not act transitively");
  int m = 0;
  for (const Permutation& p : cert.monodromies)
    m += cycle_type(p).length();
  const int n = static_cast<int>(cert.monodromies.size());
  const int twice_genus = d * (n - 2) - m + 2;
  // Always an even non-negative number for valid monodromy data; checked
  // rather than assumed.
  if (twice_genus < 0 || twice_genus % 2 != 0)
    throw std::logic_error("certificate genus is not a non-negative integer");
  return twice_genus / 2;
}

// First violated invariant when `cert` fails to witness `t`, in check
// order: degree, cycle types, product, transitivity, genus.
inline std::optional<std::string> verify_violation(const MonodromyCertificate& cert,
                                                   const BranchTriplet& t) {
  if (cert.degree < 1)
    return "degree";
  for (const Permutation& p : cert.monodromies)
    if (p.degree() != cert.degree)
      return "degree";
  std::vector<Partition> types;
  types.reserve(cert.monodromies.size());
  for (const Permutation& p : cert.monodromies)
    types.push_back(cycle_type(p));
  std::sort(types.begin(), types.end(), std::greater<>());
  if (types != t.partitions())
    return "cycle types";
  Permutation product = cert.monodromies.front();
  for (std::size_t i = 1; i < cert.monodromies.size(); ++i)
    product = compose(product, cert.monodromies[i]);
  if (!product.is_identity())
    return "product";
  if (!is_transitive(cert.monodromies, cert.degree))
    return "transitivity";
  if (std::optional<int>(genus_of_certificate(cert)) != compatible_genus(t))
    return "genus";
  return std::nullopt;
}

inline bool verify(const MonodromyCertificate& cert, const BranchTriplet& t) {
  return !verify_violation(cert, t).has_value();
}

namespace detail {

// One slot per factor of the product, in certificate order: a fixed first
// permutation, then the enumerated classes, then a slot whose value is
// forced to the inverse of everything before it and only checked against
// its prescribed type.
struct TupleSearchSpec {
  int degree = 0;
  Permutation first = Permutation::identity(1);
  bool include_first = true; // false when `first` is a placeholder identity
  std::vector<const std::vector<Permutation>*> middle_classes;
  std::vector<int> middle_cycle_counts;
  Partition forced_type = Partition({1});
  int forced_cycle_count = 1;
};

struct TupleOutcome {
  enum class Status { found, exhausted, budget };
  Status status = Status::exhausted;
  std::vector<Permutation> tuple; // certificate order, set when found
  std::uint64_t nodes = 0;
  std::size_t top_index = 0; // level-0 index of the found tuple
};

// Depth-first enumeration with two prunes:
//  - forced-type check: the running product's cycle type must equal the
//    forced slot's type (the forced permutation is its inverse);
//  - connectivity: a permutation with c cycles can merge at most d - c
//    orbits, so a partial tuple whose orbit count exceeds what the
//    remaining slots can still merge is dead.
class TupleSearchWorker {
public:
  TupleSearchWorker(const TupleSearchSpec& spec, std::uint64_t max_nodes,
                    std::chrono::steady_clock::time_point deadline,
                    std::atomic<std::size_t>* best_top)
      : spec_(spec), max_nodes_(max_nodes), deadline_(deadline), best_top_(best_top) {
    const int d = spec_.degree;
    const std::size_t levels = spec_.middle_classes.size();
    prefix_.assign(levels + 1, std::vector<int>(static_cast<std::size_t>(d)));
    parent_.assign(levels + 1, std::vector<int>(static_cast<std::size_t>(d)));
    components_.assign(levels + 1, 0);
    chosen_.assign(levels, 0);
    prefix_[0] = spec_.first.images();
    std::iota(parent_[0].begin(), parent_[0].end(), 0);
    components_[0] = d;
    for (int i = 0; i < d; ++i)
      unite(0, i, prefix_[0][static_cast<std::size_t>(i)] - 1);
    capacity_after_.assign(levels + 1, d - spec_.forced_cycle_count);
    for (std::size_t k = levels; k-- > 0;)
      capacity_after_[k] = capacity_after_[k + 1] + (d - spec_.middle_cycle_counts[k]);
    forced_hist_.assign(static_cast<std::size_t>(d) + 1, 0);
    for (int len : spec_.forced_type.parts())
      ++forced_hist_[static_cast<std::size_t>(len)];
  }

  TupleOutcome run(std::size_t top_begin, std::size_t top_end) {
    TupleOutcome out;
    if (components_[0] - 1 > capacity_after_[0]) {
      out.status = TupleOutcome::Status::exhausted;
      return out;
    }
    Step r = spec_.middle_classes.empty() ? try_forced() : dfs(0, top_begin, top_end);
    out.nodes = nodes_;
    if (r == Step::found) {
      out.status = TupleOutcome::Status::found;
      out.top_index = spec_.middle_classes.empty() ? 0 : chosen_[0];
      build_tuple(out.tuple);
    } else {
      out.status = budget_hit_ ? TupleOutcome::Status::budget
                               : TupleOutcome::Status::exhausted;
    }
    return out;
  }

private:
  enum class Step { found, none, stop };

  bool charge_node() {
    ++nodes_;
    if (nodes_ > max_nodes_) {
      budget_hit_ = true;
      return false;
    }
    if ((nodes_ & 1023) == 0 &&
        std::chrono::steady_clock::now() > deadline_) {
      budget_hit_ = true;
      return false;
    }
    return true;
  }

  void unite(std::size_t level, int a, int b) {
    auto& parent = parent_[level];
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    a = find(a);
    b = find(b);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components_[level];
    }
  }

  Step dfs(std::size_t level, std::size_t begin, std::size_t end) {
    const auto& cls = *spec_.middle_classes[level];
    const std::size_t levels = spec_.middle_classes.size();
    for (std::size_t i = begin; i < end; ++i) {
      if (level == 0 && best_top_ &&
          i > best_top_->load(std::memory_order_relaxed))
        return Step::none; // someone already found an earlier tuple
      if (!charge_node())
        return Step::stop;
      const auto& cand = cls[i].images();
      const int d = spec_.degree;
      auto& next_prefix = prefix_[level + 1];
      for (int p = 0; p < d; ++p)
        next_prefix[static_cast<std::size_t>(p)] =
            cand[static_cast<std::size_t>(prefix_[level][static_cast<std::size_t>(p)] - 1)];
      parent_[level + 1] = parent_[level];
      components_[level + 1] = components_[level];
      for (int p = 0; p < d; ++p)
        unite(level + 1, p, cand[static_cast<std::size_t>(p)] - 1);
      if (components_[level + 1] - 1 > capacity_after_[level + 1])
        continue;
      chosen_[level] = i;
      Step r = (level + 1 == levels) ? try_forced()
                                     : dfs(level + 1, 0,
                                           spec_.middle_classes[level + 1]->size());
      if (r != Step::none)
        return r;
    }
    return Step::none;
  }

  Step try_forced() {
    if (!charge_node())
      return Step::stop;
    const int d = spec_.degree;
    const std::size_t levels = spec_.middle_classes.size();
    const auto& product = prefix_[levels];
    // The forced permutation is product^-1; same cycle type as the product.
    hist_scratch_.assign(static_cast<std::size_t>(d) + 1, 0);
    seen_scratch_.assign(static_cast<std::size_t>(d), false);
    for (int start = 0; start < d; ++start) {
      if (seen_scratch_[static_cast<std::size_t>(start)])
        continue;
      int len = 0;
      int p = start;
      do {
        seen_scratch_[static_cast<std::size_t>(p)] = true;
        ++len;
        p = product[static_cast<std::size_t>(p)] - 1;
      } while (p != start);
      ++hist_scratch_[static_cast<std::size_t>(len)];
    }
    if (hist_scratch_ != forced_hist_)
      return Step::none;
    // Transitivity of the full tuple: orbits so far, merged along the
    // forced permutation's cycles (the product's cycles).
    parent_scratch_ = parent_[levels];
    int components = components_[levels];
    auto find = [&](int x) {
      while (parent_scratch_[static_cast<std::size_t>(x)] != x) {
        parent_scratch_[static_cast<std::size_t>(x)] =
            parent_scratch_[static_cast<std::size_t>(
                parent_scratch_[static_cast<std::size_t>(x)])];
        x = parent_scratch_[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (int p = 0; p < d; ++p) {
      int a = find(p);
      int b = find(product[static_cast<std::size_t>(p)] - 1);
      if (a != b) {
        parent_scratch_[static_cast<std::size_t>(a)] = b;
        --components;
      }
    }
    if (components != 1)
      return Step::none;
    return Step::found;
  }

  void build_tuple(std::vector<Permutation>& tuple) const {
    if (spec_.include_first)
      tuple.push_back(spec_.first);
    for (std::size_t k = 0; k < spec_.middle_classes.size(); ++k)
      tuple.push_back((*spec_.middle_classes[k])[chosen_[k]]);
    const auto& product = prefix_[spec_.middle_classes.size()];
    std::vector<int> inv(product.size());
    for (std::size_t p = 0; p < product.size(); ++p)
      inv[static_cast<std::size_t>(product[p] - 1)] = static_cast<int>(p) + 1;
    tuple.emplace_back(std::move(inv));
  }

  const TupleSearchSpec& spec_;
  std::uint64_t max_nodes_;
  std::chrono::steady_clock::time_point deadline_;
  std::atomic<std::size_t>* best_top_;
  std::uint64_t nodes_ = 0;
  bool budget_hit_ = false;
  std::vector<std::vector<int>> prefix_;
  std::vector<std::vector<int>> parent_;
  std::vector<int> components_;
  std::vector<std::size_t> chosen_;
  std::vector<int> capacity_after_;
  std::vector<int> forced_hist_;
  std::vector<int> hist_scratch_;
  std::vector<bool> seen_scratch_;
  std::vector<int> parent_scratch_;
};

inline TupleOutcome run_tuple_search(const TupleSearchSpec& spec,
                                     const SearchBudget& budget, int threads) {
  const auto deadline = std::chrono::steady_clock::now() + budget.max_time;
  const std::size_t top_size =
      spec.middle_classes.empty() ? 1 : spec.middle_classes.front()->size();
  const std::size_t workers =
      std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(top_size, 1));
  if (workers <= 1 || spec.middle_classes.empty()) {
    TupleSearchWorker worker(spec, budget.max_nodes, deadline, nullptr);
    return worker.run(0, top_size);
  }
  std::atomic<std::size_t> best_top{std::numeric_limits<std::size_t>::max()};
  std::vector<TupleOutcome> outcomes(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t worker_nodes =
      std::max<std::uint64_t>(budget.max_nodes / workers, 1);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = top_size * w / workers;
      const std::size_t end = top_size * (w + 1) / workers;
      TupleSearchWorker worker(spec, worker_nodes, deadline, &best_top);
      TupleOutcome out = worker.run(begin, end);
      if (out.status == TupleOutcome::Status::found) {
        std::size_t prev = best_top.load(std::memory_order_relaxed);
        while (prev > out.top_index &&
               !best_top.compare_exchange_weak(prev, out.top_index)) {
        }
      }
      outcomes[w] = std::move(out);
    });
  }
  for (auto& th : pool)
    th.join();
  TupleOutcome combined;
  combined.status = TupleOutcome::Status::exhausted;
  bool any_budget = false;
  const TupleOutcome* best = nullptr;
  for (const TupleOutcome& out : outcomes) {
    combined.nodes += out.nodes;
    if (out.status == TupleOutcome::Status::found &&
        (!best || out.top_index < best->top_index))
      best = &out;
    if (out.status == TupleOutcome::Status::budget)
      any_budget = true;
  }
  if (best) {
    combined.status = TupleOutcome::Status::found;
    combined.tuple = best->tuple;
    combined.top_index = best->top_index;
  } else if (any_budget) {
    combined.status = TupleOutcome::Status::budget;
  }
  return combined;
}

} // namespace detail

// Exhaustive decision via monodromy search.  Incompatible data is
// NotRealizable outright; otherwise the sufficient conditions run first and
// the tuple search settles the rest.  Slot order: the largest conjugacy
// class is pinned to its canonical representative, the second largest is
// the forced slot, the remaining classes are enumerated smallest first.
inline RealizabilityVerdict decide(const BranchTriplet& t,
                                   const SearchBudget& budget = {},
                                   const DecideOptions& opts = {}) {
  const auto started = std::chrono::steady_clock::now();
  auto finish = [&](RealizabilityVerdict v) {
    v.stats.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    return v;
  };

  if (!compatible_genus(t).has_value())
    return finish({VerdictKind::not_realizable, std::nullopt,
                   Attribution::incompatible, {}});

  std::optional<Attribution> fast;
  if (opts.use_fast_paths) {
    if (check_eks(t))
      fast = Attribution::eks;
    else if (check_baranski(t))
      fast = Attribution::baranski;
  }
  if (fast && !opts.want_certificate)
    return finish({VerdictKind::realizable, std::nullopt, *fast, {}});

  const auto& pi = t.partitions();
  const int n = t.branch_count();
  if (n == 1) // a single nontrivial permutation is never the identity
    return finish({VerdictKind::not_realizable, std::nullopt,
                   Attribution::search, {}});

  std::vector<std::size_t> order(pi.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::uint64_t> sizes;
  sizes.reserve(pi.size());
  for (const Partition& p : pi)
    sizes.push_back(conjugacy_class_size(p));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sizes[a] != sizes[b])
      return sizes[a] > sizes[b];
    return a < b;
  });
  const std::size_t first_slot = order[0];
  const std::size_t forced_slot = order[1];
  std::vector<std::size_t> middles(order.begin() + 2, order.end());
  std::sort(middles.begin(), middles.end(), [&](std::size_t a, std::size_t b) {
    if (sizes[a] != sizes[b])
      return sizes[a] < sizes[b];
    return a < b;
  });
  if (!opts.fix_first_class)
    middles.insert(middles.begin(), first_slot);

  // Materialize each distinct class once.
  std::vector<std::pair<Partition, std::vector<Permutation>>> class_store;
  auto class_of = [&](const Partition& p) -> const std::vector<Permutation>* {
    for (const auto& [type, perms] : class_store)
      if (type == p)
        return &perms;
    class_store.emplace_back(p, enumerate_of_type(p));
    return &class_store.back().second;
  };
  // Pointers into class_store must not move while workers hold them.
  class_store.reserve(pi.size());

  detail::TupleSearchSpec spec;
  spec.degree = t.degree();
  spec.include_first = opts.fix_first_class;
  spec.first = opts.fix_first_class ? canonical_of_type(pi[first_slot])
                                    : Permutation::identity(t.degree());
  for (std::size_t slot : middles) {
    spec.middle_classes.push_back(class_of(pi[slot]));
    spec.middle_cycle_counts.push_back(pi[slot].length());
  }
  spec.forced_type = pi[forced_slot];
  spec.forced_cycle_count = pi[forced_slot].length();

  detail::TupleOutcome out = detail::run_tuple_search(spec, budget, opts.threads);
  SearchStats stats;
  stats.nodes = out.nodes;
  switch (out.status) {
  case detail::TupleOutcome::Status::found: {
    MonodromyCertificate cert{t.degree(), std::move(out.tuple)};
    if (!verify(cert, t))
      throw std::logic_error("internal error: search produced an invalid certificate");
    return finish({VerdictKind::realizable, std::move(cert),
                   fast.value_or(Attribution::search), stats});
  }
  case detail::TupleOutcome::Status::exhausted:
    // A firing fast path with an exhausted search would be an internal
    // contradiction; the exhaustive search is the ground truth and the
    // consistency sweeps in the tests enforce agreement.
    return finish({VerdictKind::not_realizable, std::nullopt,
                   Attribution::search, stats});
  case detail::TupleOutcome::Status::budget:
    if (fast)
      return finish({VerdictKind::realizable, std::nullopt, *fast, stats});
    return finish({VerdictKind::undecided, std::nullopt, Attribution::search,
                   stats});
  }
  throw std::logic_error("unreachable");
}

// Decides a batch, optionally fanning out across workers; results are
// positionally identical to deciding sequentially with the same options.
inline std::vector<RealizabilityVerdict> decide_all(
    const std::vector<BranchTriplet>& triplets, const SearchBudget& budget = {},
    const DecideOptions& opts = {}) {
  std::vector<std::optional<RealizabilityVerdict>> slots(triplets.size());
  const std::size_t workers = std::min<std::size_t>(
      std::max(opts.threads, 1), std::max<std::size_t>(triplets.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < triplets.size(); ++i)
      slots[i] = decide(triplets[i], budget, opts);
  } else {
    DecideOptions inner = opts;
    inner.threads = 1;
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= triplets.size())
            return;
          slots[i] = decide(triplets[i], budget, inner);
        }
      });
    }
    for (auto& th : pool)
      th.join();
  }
  std::vector<RealizabilityVerdict> out;
  out.reserve(triplets.size());
  for (auto& slot : slots)
    out.push_back(std::move(*slot));
  return out;
}

} // namespace hurwitz
