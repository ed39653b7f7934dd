#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hurwitz/complexity.hpp"
#include "hurwitz/realizability.hpp"
#include "hurwitz/triplet.hpp"

namespace hurwitz {

// Insertion-ordered JSON keeps field order stable for golden comparisons.
using json = nlohmann::ordered_json;

// {"pi_coefficient": 6} or {"infinite": true}.
inline json complexity_to_json(const ComplexityValue& v) {
  json j;
  if (v.is_finite())
    j["pi_coefficient"] = v.pi_coefficient();
  else
    j["infinite"] = true;
  return j;
}

inline ComplexityValue complexity_from_json(const json& j) {
  if (j.contains("pi_coefficient"))
    return ComplexityValue::finite(j.at("pi_coefficient").get<long long>());
  if (j.contains("infinite") && j.at("infinite").get<bool>())
    return ComplexityValue::infinite();
  throw std::invalid_argument("malformed complexity value");
}

// {"degree": d, "monodromies": ["(1 2)", ...], "triplet": "d:n:..."} with
// exactly that field order.  The triplet rides along so a certificate file
// is self-contained.
inline json certificate_to_json(const MonodromyCertificate& cert,
                                const BranchTriplet& t) {
  json j;
  j["degree"] = cert.degree;
  json monodromies = json::array();
  for (const Permutation& p : cert.monodromies)
    monodromies.push_back(format_cycles(p));
  j["monodromies"] = std::move(monodromies);
  j["triplet"] = format_triplet(t);
  return j;
}

// Reads back a certificate plus the branch data it claims to witness.
// Structural problems throw; whether the certificate actually verifies is
// the caller's question.
inline std::pair<MonodromyCertificate, BranchTriplet>
certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("monodromies") ||
      !j.contains("triplet"))
    throw std::invalid_argument("malformed certificate: need degree, monodromies, triplet");
  const int degree = j.at("degree").get<int>();
  if (degree < 1)
    throw std::invalid_argument("malformed certificate: degree must be positive");
  MonodromyCertificate cert;
  cert.degree = degree;
  for (const auto& entry : j.at("monodromies"))
    cert.monodromies.push_back(parse_cycles(entry.get<std::string>(), degree));
  BranchTriplet t = parse_triplet(j.at("triplet").get<std::string>());
  return {std::move(cert), std::move(t)};
}

inline std::string to_string(VerdictKind kind) {
  switch (kind) {
  case VerdictKind::realizable:
    return "realizable";
  case VerdictKind::not_realizable:
    return "not_realizable";
  case VerdictKind::undecided:
    return "undecided";
  }
  throw std::logic_error("unreachable");
}

inline VerdictKind verdict_kind_from_string(const std::string& s) {
  if (s == "realizable")
    return VerdictKind::realizable;
  if (s == "not_realizable")
    return VerdictKind::not_realizable;
  if (s == "undecided")
    return VerdictKind::undecided;
  throw std::invalid_argument("unknown verdict: " + s);
}

inline std::string to_string(Attribution a) {
  switch (a) {
  case Attribution::incompatible:
    return "incompatible";
  case Attribution::eks:
    return "eks";
  case Attribution::baranski:
    return "baranski";
  case Attribution::search:
    return "search";
  }
  throw std::logic_error("unreachable");
}

inline Attribution attribution_from_string(const std::string& s) {
  if (s == "incompatible")
    return Attribution::incompatible;
  if (s == "eks")
    return Attribution::eks;
  if (s == "baranski")
    return Attribution::baranski;
  if (s == "search")
    return Attribution::search;
  throw std::invalid_argument("unknown attribution: " + s);
}

} // namespace hurwitz
