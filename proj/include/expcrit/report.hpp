// expcrit: exponent-critical finite groups
// Requirements: C++20, nlohmann/json (json.hpp)

#pragma once

#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "audit.hpp"
#include "witness.hpp"

namespace expcrit {

using Json = nlohmann::ordered_json;

inline Json witness_json(const WitnessReport& w) {
  Json j;
  j["prime"] = w.prime;
  j["p_part"] = w.group_exponent_p_part;
  j["found"] = w.found();
  j["witness_order"] = w.found() ? Json(w.witness->order()) : Json(nullptr);
  j["witness_exponent"] = w.witness_exponent ? Json(*w.witness_exponent) : Json(nullptr);
  return j;
}

/// Structured analysis document. Keys order, exponent, primes, witnesses,
/// critical and type are stable.
inline Json analysis_json(const std::string& spec, const AnalysisReport& r, std::optional<double> elapsed_ms = std::nullopt) {
  Json j;
  j["spec"] = spec;
  j["order"] = r.order;
  Json f = Json::array();
  for (auto [p, k] : r.factorization) f.push_back(Json::array({p, k}));
  j["factorization"] = f;
  j["exponent"] = r.exponent;
  Json primes = Json::array();
  for (auto [p, k] : r.factorization) primes.push_back(p);
  j["primes"] = primes;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_json(w));
  j["witnesses"] = ws;
  j["critical"] = r.exponent_critical;
  j["type"] = std::string(to_string(r.type));
  j["maximal_subgroups"] = r.maximal_count;
  j["abelian_maximal_subgroups"] = r.abelian_maximal_count;
  if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
  return j;
}

inline std::string analysis_text(const std::string& spec, const AnalysisReport& r, std::optional<double> elapsed_ms = std::nullopt) {
  std::ostringstream out;
  out << "group        " << spec << "\n";
  out << "order        " << r.order << " = " << detail::primes_text(r.factorization) << "\n";
  out << "exponent     " << r.exponent << "\n";
  out << "maximals     " << r.maximal_count << " (" << r.abelian_maximal_count << " abelian)\n";
  out << "prime  p-part  witness\n";
  for (const auto& w : r.witnesses) {
    std::string p = std::to_string(w.prime), pp = std::to_string(w.group_exponent_p_part);
    out << p << std::string(p.size() < 7 ? 7 - p.size() : 1, ' ') << pp << std::string(pp.size() < 8 ? 8 - pp.size() : 1, ' ');
    if (w.found())
      out << "order " << w.witness->order() << ", exponent " << *w.witness_exponent << "\n";
    else
      out << "none\n";
  }
  out << "critical     " << (r.exponent_critical ? "true" : "false") << "\n";
  out << "type         " << to_string(r.type) << "\n";
  if (elapsed_ms) out << "elapsed      " << *elapsed_ms << " ms\n";
  return out.str();
}

inline Json audit_json(const AuditReport& r, std::optional<double> elapsed_ms = std::nullopt) {
  Json j;
  j["suite"] = r.suite;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"label", c.label}, {"subject", c.subject}, {"status", std::string(to_string(c.status))}, {"detail", c.detail}});
  j["checks"] = checks;
  j["summary"] = {{"pass", r.count(CheckStatus::pass)}, {"fail", r.count(CheckStatus::fail)}, {"skip", r.count(CheckStatus::skip)}};
  if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
  return j;
}

inline std::string audit_text(const AuditReport& r, std::optional<double> elapsed_ms = std::nullopt) {
  std::ostringstream out;
  out << "audit " << r.suite;
  for (const auto& [k, v] : r.params) out << " " << k << "=" << v;
  out << "\n";
  for (const auto& c : r.checks)
    out << "[" << to_string(c.status) << "] " << c.label << "  " << c.subject << "  " << c.detail << "\n";
  out << r.count(CheckStatus::pass) << " passed, " << r.count(CheckStatus::fail) << " failed, " << r.count(CheckStatus::skip)
      << " skipped\n";
  if (elapsed_ms) out << "elapsed " << *elapsed_ms << " ms\n";
  return out.str();
}

}  // namespace expcrit
