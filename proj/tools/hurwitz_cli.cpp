// Command-line front end: compatibility checks, realizability decisions with
// a verdict cache, minimal-complexity tables, certificate verification, and
// range sweeps.  Verdict output goes to stdout and is deterministic; timing
// and provenance go to stderr.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hurwitz/cache.hpp"
#include "hurwitz/complexity.hpp"
#include "hurwitz/hurwitz.hpp"
#include "hurwitz/json_io.hpp"

using hurwitz::Attribution;
using hurwitz::BranchTriplet;
using hurwitz::CacheRecord;
using hurwitz::certificate_from_json;
using hurwitz::ComplexityValue;
using hurwitz::DecideOptions;
using hurwitz::json;
using hurwitz::MonodromyCertificate;
using hurwitz::SearchBudget;
using hurwitz::SweepOptions;
using hurwitz::SweepStatus;
using hurwitz::VerdictCache;
using hurwitz::VerdictKind;

namespace {

int verdict_exit_code(VerdictKind kind) {
  switch (kind) {
  case VerdictKind::realizable:
    return 0;
  case VerdictKind::not_realizable:
    return 1;
  case VerdictKind::undecided:
    return 3;
  }
  return 2;
}

void warn_large_degree(int degree) {
  if (degree > 9)
    std::cerr << "warning: degree " << degree
              << " conjugacy classes are factorially large; expect a slow search"
              << " or raise --budget-nodes\n";
}

int run_compat(const std::string& text, bool as_json) {
  const BranchTriplet t = hurwitz::parse_triplet(text);
  const std::optional<int> genus = compatible_genus(t);
  if (as_json) {
    json out;
    out["triplet"] = format_triplet(t);
    out["compatible"] = genus.has_value();
    out["m"] = total_length(t);
    if (genus)
      out["genus"] = *genus;
    out["hyperbolic"] = is_hyperbolic(t);
    out["simple"] = is_simple(t);
    std::cout << out.dump() << '\n';
  } else if (genus) {
    std::cout << "m=" << total_length(t) << " genus=" << *genus
              << " hyperbolic=" << (is_hyperbolic(t) ? "yes" : "no")
              << " simple=" << (is_simple(t) ? "yes" : "no") << '\n';
  } else {
    std::cout << "incompatible\n";
  }
  return genus ? 0 : 1;
}

int run_realize(const std::string& text, const SearchBudget& budget, int threads,
                bool want_cert, bool as_json, bool no_cache,
                const std::string& cache_flag) {
  const auto started = std::chrono::steady_clock::now();
  const BranchTriplet t = hurwitz::parse_triplet(text);
  warn_large_degree(t.degree());
  const std::string key = format_triplet(t);

  std::optional<VerdictCache> cache;
  if (!no_cache)
    cache.emplace(hurwitz::resolve_cache_path(cache_flag));

  VerdictKind kind;
  Attribution attribution;
  std::optional<MonodromyCertificate> certificate;
  std::uint64_t nodes = 0;
  const char* source = "search";

  std::optional<CacheRecord> hit;
  if (cache)
    hit = cache->lookup(key, budget);
  if (hit) {
    source = "cache";
    kind = hit->verdict;
    attribution = hit->attribution;
    if (hit->certificate)
      certificate = certificate_from_json(*hit->certificate).first;
  } else {
    DecideOptions opts;
    opts.threads = threads;
    // With a cache in play, always search for the witness so the record can
    // be re-verified on every load.
    opts.want_certificate = want_cert || cache.has_value();
    const auto verdict = decide(t, budget, opts);
    kind = verdict.kind;
    attribution = verdict.attribution;
    certificate = verdict.certificate;
    nodes = verdict.stats.nodes;
    // A realizable verdict without a witness (sufficient condition fired but
    // the budget ran out mid-search) is sound yet unverifiable; keep it out
    // of the cache rather than store a record that would be dropped on load.
    if (cache && !(kind == VerdictKind::realizable && !certificate)) {
      CacheRecord record;
      record.key = key;
      record.verdict = kind;
      record.attribution = attribution;
      record.budget_nodes = budget.max_nodes;
      record.budget_ms = static_cast<std::uint64_t>(budget.max_time.count());
      record.nodes = nodes;
      if (certificate)
        record.certificate = certificate_to_json(*certificate, t);
      record.timestamp = hurwitz::cache_timestamp_now();
      cache->append(record);
    }
  }

  if (as_json) {
    json out;
    out["triplet"] = key;
    out["verdict"] = to_string(kind);
    out["attribution"] = to_string(attribution);
    if (kind == VerdictKind::realizable) {
      out["genus"] = *compatible_genus(t);
      out["complexity"] = complexity_to_json(cov_complexity(t));
      if (want_cert && certificate)
        out["certificate"] = certificate_to_json(*certificate, t);
    }
    std::cout << out.dump() << '\n';
  } else {
    std::cout << key << ' ' << to_string(kind);
    if (kind == VerdictKind::undecided)
      std::cout << " (budget exhausted)";
    else
      std::cout << " (" << to_string(attribution) << ')';
    if (kind == VerdictKind::realizable)
      std::cout << " genus=" << *compatible_genus(t)
                << " complexity=" << to_string(cov_complexity(t));
    std::cout << '\n';
    if (kind == VerdictKind::realizable && want_cert && certificate)
      for (const auto& p : certificate->monodromies)
        std::cout << "  " << format_cycles(p) << '\n';
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  std::cerr << "source=" << source << " nodes=" << nodes
            << " elapsed_ms=" << elapsed.count() << '\n';
  return verdict_exit_code(kind);
}

int run_table(int genus_max, const std::string& mode, bool verify_search,
              bool as_json, const SearchBudget& budget, int threads) {
  SweepOptions sweep_opts;
  sweep_opts.max_genus = genus_max;
  sweep_opts.threads = threads;
  bool any_disagree = false;
  bool any_undecided = false;
  json rows = json::array();
  std::vector<std::string> lines;
  for (int g = 0; g <= genus_max; ++g) {
    for (const std::string& kind : {std::string("top"), std::string("simp")}) {
      if (mode != "both" && mode != kind)
        continue;
      const ComplexityValue closed =
          kind == "top" ? hurwitz::c_top_closed(g) : hurwitz::c_simp_closed(g);
      json row;
      row["genus"] = g;
      row["mode"] = kind;
      row["closed"] = complexity_to_json(closed);
      std::string line = "g=" + std::to_string(g) + " " + kind +
                         " closed=" + to_string(closed);
      if (verify_search) {
        const auto out = kind == "top"
                             ? hurwitz::c_top_search(g, budget, sweep_opts)
                             : hurwitz::c_simp_search(g, budget, sweep_opts);
        if (out.status == SweepStatus::undecided) {
          any_undecided = true;
          row["status"] = "UNDECIDED";
          line += " search=? UNDECIDED";
        } else {
          const auto& witness = *out.witness;
          const bool agree = witness.value == closed;
          any_disagree = any_disagree || !agree;
          row["search"] = complexity_to_json(witness.value);
          row["status"] = agree ? "AGREE" : "DISAGREE";
          row["witness"] = certificate_to_json(witness.certificate, witness.triplet);
          row["triplets_decided"] = witness.triplets_decided;
          line += " search=" + to_string(witness.value) +
                  (agree ? " AGREE" : " DISAGREE") +
                  " witness=" + format_triplet(witness.triplet);
        }
      }
      rows.push_back(std::move(row));
      lines.push_back(std::move(line));
    }
  }
  if (as_json) {
    json doc;
    doc["rows"] = std::move(rows);
    std::cout << doc.dump() << '\n';
  } else {
    for (const std::string& line : lines)
      std::cout << line << '\n';
  }
  if (any_disagree)
    return 1;
  return any_undecided ? 3 : 0;
}

int run_verify(const std::string& path, bool as_json) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << '\n';
    return 2;
  }
  const json doc = json::parse(in);
  const auto [certificate, t] = certificate_from_json(doc);
  const std::optional<std::string> violation = verify_violation(certificate, t);
  if (as_json) {
    json out;
    out["triplet"] = format_triplet(t);
    out["valid"] = !violation.has_value();
    if (violation) {
      out["violation"] = *violation;
    } else {
      out["genus"] = genus_of_certificate(certificate);
      out["complexity"] = complexity_to_json(cov_complexity(t));
    }
    std::cout << out.dump() << '\n';
  } else if (violation) {
    std::cout << "invalid: " << *violation << '\n';
  } else {
    std::cout << "valid, genus=" << genus_of_certificate(certificate)
              << ", complexity=" << to_string(cov_complexity(t)) << '\n';
  }
  return violation ? 1 : 0;
}

int run_sweep(int d_min, int d_max, int n_min, int n_max,
              std::optional<int> genus_filter, const SearchBudget& budget,
              int threads) {
  if (d_min < 2 || d_max < d_min || n_min < 1 || n_max < n_min) {
    std::cerr << "error: need 2 <= d-min <= d-max and 1 <= n-min <= n-max\n";
    return 2;
  }
  warn_large_degree(d_max);
  DecideOptions opts;
  opts.threads = threads;
  opts.want_certificate = true;
  bool any_undecided = false;
  for (int d = d_min; d <= d_max; ++d) {
    for (int n = n_min; n <= n_max; ++n) {
      std::vector<BranchTriplet> triplets = hurwitz::triplets_for(d, n);
      if (genus_filter)
        std::erase_if(triplets, [&](const BranchTriplet& t) {
          return compatible_genus(t) != *genus_filter;
        });
      const auto verdicts = decide_all(triplets, budget, opts);
      for (std::size_t i = 0; i < triplets.size(); ++i) {
        const BranchTriplet& t = triplets[i];
        const auto& v = verdicts[i];
        json line;
        line["triplet"] = format_triplet(t);
        line["m"] = total_length(t);
        const auto genus = compatible_genus(t);
        line["genus"] = genus ? json(*genus) : json(nullptr);
        line["hyperbolic"] = is_hyperbolic(t);
        line["simple"] = is_simple(t);
        line["verdict"] = to_string(v.kind);
        line["attribution"] = to_string(v.attribution);
        line["nodes"] = v.stats.nodes;
        if (v.kind == VerdictKind::realizable && v.certificate)
          line["certificate"] = certificate_to_json(*v.certificate, t);
        any_undecided = any_undecided || v.kind == VerdictKind::undecided ||
                        (v.kind == VerdictKind::realizable && !v.certificate);
        std::cout << line.dump() << '\n';
      }
    }
  }
  return any_undecided ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branched-covering realizability and complexity toolkit"};
  app.require_subcommand(1);

  std::string triplet_text;
  std::uint64_t budget_nodes = 100'000'000;
  std::uint64_t budget_ms = 60'000;
  int threads = 1;
  bool as_json = false;
  bool want_cert = false;
  bool no_cache = false;
  std::string cache_flag;
  int genus_max = 3;
  std::string mode = "both";
  bool verify_search = false;
  std::string certificate_file;
  int d_min = 2;
  int d_max = 4;
  int n_min = 3;
  int n_max = 4;
  int genus_filter = 0;

  const std::string triplet_help =
      "branch data as d:n:part/part/..., e.g. 4:3:3+1/2+2/2+2";

  CLI::App* compat =
      app.add_subcommand("compat", "Check compatibility and print invariants");
  compat->add_option("triplet", triplet_text, triplet_help)->required();
  compat->add_flag("--json", as_json, "emit one JSON object");

  CLI::App* realize =
      app.add_subcommand("realize", "Decide realizability, with a verdict cache");
  realize->add_option("triplet", triplet_text, triplet_help)->required();
  realize->add_option("--budget-nodes", budget_nodes, "search node ceiling")
      ->capture_default_str();
  realize->add_option("--budget-ms", budget_ms, "search wall-clock ceiling")
      ->capture_default_str();
  realize->add_option("--threads", threads, "search worker threads")
      ->capture_default_str();
  realize->add_flag("--certificate", want_cert, "print the witness monodromies");
  realize->add_flag("--json", as_json, "emit one JSON object");
  realize->add_flag("--no-cache", no_cache, "skip the verdict cache entirely");
  realize->add_option("--cache", cache_flag,
                      "cache file (default: $HURWITZ_CACHE or ./hurwitz-cache.jsonl)");

  CLI::App* table = app.add_subcommand(
      "table", "Minimal complexity per genus: closed form, optionally re-derived");
  table->add_option("--genus-max", genus_max, "largest genus row")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  table->add_option("--mode", mode, "top, simp, or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"top", "simp", "both"}));
  table->add_flag("--verify-search", verify_search,
                  "re-derive each value by exhaustive search and compare");
  table->add_flag("--json", as_json, "emit one JSON document");
  table->add_option("--budget-nodes", budget_nodes, "search node ceiling")
      ->capture_default_str();
  table->add_option("--budget-ms", budget_ms, "search wall-clock ceiling")
      ->capture_default_str();
  table->add_option("--threads", threads, "search worker threads")
      ->capture_default_str();

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check a JSON certificate file");
  verify_cmd->add_option("file", certificate_file, "certificate document")
      ->required();
  verify_cmd->add_flag("--json", as_json, "emit one JSON object");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Decide every triplet in a range; JSON lines");
  sweep->add_option("--d-min", d_min, "smallest degree")->capture_default_str();
  sweep->add_option("--d-max", d_max, "largest degree")->capture_default_str();
  sweep->add_option("--n-min", n_min, "fewest branch points")->capture_default_str();
  sweep->add_option("--n-max", n_max, "most branch points")->capture_default_str();
  CLI::Option* genus_opt = sweep->add_option(
      "--genus", genus_filter, "keep only triplets compatible with this genus");
  sweep->add_option("--budget-nodes", budget_nodes, "search node ceiling")
      ->capture_default_str();
  sweep->add_option("--budget-ms", budget_ms, "search wall-clock ceiling")
      ->capture_default_str();
  sweep->add_option("--threads", threads, "search worker threads")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  SearchBudget budget;
  budget.max_nodes = budget_nodes;
  budget.max_time = std::chrono::milliseconds(budget_ms);

  try {
    if (app.got_subcommand(compat))
      return run_compat(triplet_text, as_json);
    if (app.got_subcommand(realize))
      return run_realize(triplet_text, budget, threads, want_cert, as_json,
                         no_cache, cache_flag);
    if (app.got_subcommand(table))
      return run_table(genus_max, mode, verify_search, as_json, budget, threads);
    if (app.got_subcommand(verify_cmd))
      return run_verify(certificate_file, as_json);
    if (app.got_subcommand(sweep))
      return run_sweep(d_min, d_max, n_min, n_max,
                       genus_opt->count() ? std::optional<int>(genus_filter)
                                          : std::nullopt,
                       budget, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
