#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "hurwitz/json_io.hpp"
#include "hurwitz/realizability.hpp"
#include "hurwitz/triplet.hpp"

namespace hurwitz {

// One line of the append-only verdict cache.  `key` is the canonical
// triplet text; `attribution` is what decided the verdict when it was first
// computed; `nodes` the search nodes it cost then.
struct CacheRecord {
  std::string key;
  VerdictKind verdict;
  Attribution attribution;
  std::uint64_t budget_nodes;
  std::uint64_t budget_ms;
  std::uint64_t nodes;
  std::optional<json> certificate; // present iff verdict is realizable
  std::string timestamp;
};

inline std::string cache_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

inline json cache_record_to_json(const CacheRecord& r) {
  json j;
  j["key"] = r.key;
  j["verdict"] = to_string(r.verdict);
  j["attribution"] = to_string(r.attribution);
  j["budget_nodes"] = r.budget_nodes;
  j["budget_ms"] = r.budget_ms;
  j["nodes"] = r.nodes;
  if (r.certificate)
    j["certificate"] = *r.certificate;
  j["timestamp"] = r.timestamp;
  return j;
}

// JSON-lines verdict cache.  Verdicts are facts, so later records for the
// same key only ever extend the budget; loading keeps the last record per
// key.  Records that fail to parse, or Realizable records whose embedded
// certificate does not verify against the key, are dropped with a warning
// rather than trusted.
class VerdictCache {
public:
  explicit VerdictCache(std::string path) : path_(std::move(path)) { load(); }

  const std::string& path() const noexcept { return path_; }

  // A usable record: decisive verdicts always, Undecided only when it was
  // produced under at least the budget now being requested.
  std::optional<CacheRecord> lookup(const std::string& key,
                                    const SearchBudget& requested) const {
    auto it = records_.find(key);
    if (it == records_.end())
      return std::nullopt;
    const CacheRecord& r = it->second;
    if (r.verdict == VerdictKind::undecided &&
        (r.budget_nodes < requested.max_nodes ||
         r.budget_ms < static_cast<std::uint64_t>(requested.max_time.count())))
      return std::nullopt;
    return r;
  }

  void append(const CacheRecord& record) {
    std::ofstream out(path_, std::ios::app);
    if (!out)
      throw std::runtime_error("cannot open cache file: " + path_);
    out << cache_record_to_json(record).dump() << '\n';
    records_[record.key] = record;
  }

private:
  void load() {
    std::ifstream in(path_);
    if (!in)
      return; // no cache yet
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty())
        continue;
      try {
        const json j = json::parse(line);
        CacheRecord r;
        r.key = j.at("key").get<std::string>();
        r.verdict = verdict_kind_from_string(j.at("verdict").get<std::string>());
        r.attribution =
            attribution_from_string(j.at("attribution").get<std::string>());
        r.budget_nodes = j.at("budget_nodes").get<std::uint64_t>();
        r.budget_ms = j.at("budget_ms").get<std::uint64_t>();
        r.nodes = j.at("nodes").get<std::uint64_t>();
        r.timestamp = j.value("timestamp", std::string());
        if (j.contains("certificate"))
          r.certificate = j.at("certificate");
        if (r.verdict == VerdictKind::realizable) {
          if (!r.certificate)
            throw std::invalid_argument("realizable record lacks a certificate");
          auto [cert, t] = certificate_from_json(*r.certificate);
          if (format_triplet(t) != r.key || !verify(cert, t))
            throw std::invalid_argument("certificate does not verify");
        }
        records_[r.key] = std::move(r);
      } catch (const std::exception& e) {
        std::cerr << "warning: dropping cache record at " << path_ << ":"
                  << lineno << ": " << e.what() << '\n';
      }
    }
  }

  std::string path_;
  std::unordered_map<std::string, CacheRecord> records_;
};

// Cache path: explicit flag beats HURWITZ_CACHE, which beats the default
// file in the working directory.
inline std::string resolve_cache_path(const std::string& flag_value) {
  if (!flag_value.empty())
    return flag_value;
  if (const char* env = std::getenv("HURWITZ_CACHE"); env && *env)
    return env;
  return "hurwitz-cache.jsonl";
}

} // namespace hurwitz
