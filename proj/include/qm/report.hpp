#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qm/io.hpp"
#include "qm/metric_targets.hpp"
#include "qm/qm_core.hpp"

namespace qm {

enum class ReportFormat { json, csv, human };

inline ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "human") return ReportFormat::human;
  throw ConfigError("unknown format '" + s + "' (expected json|csv|human)");
}

inline Json to_json(const DefectCertificate& c) {
  Json j;
  j["claimed"] = c.claimed.str();
  j["oracle_value"] = c.oracle_value.str();
  j["witness_x"] = c.witness_x.str();
  j["witness_y"] = c.witness_y.str();
  j["max_exp"] = c.max_exp;
  j["max_len"] = c.max_len;
  j["pairs_checked"] = c.pairs_checked;
  j["sampled"] = c.sampled;
  j["agrees"] = c.agrees();
  return j;
}

inline Json to_json(const GromovNormReport& r) {
  Json j;
  j["defect"] = r.defect.str();
  j["d"] = r.d.str();
  j["k"] = r.k;
  j["l"] = r.l;
  j["homogenized_lower_bound"] = r.hqm_defect_lower.str();
  j["witness_x"] = r.witness_x.str();
  j["witness_y"] = r.witness_y.str();
  if (r.conclusion) j["norm"] = r.conclusion->str();
  else j["norm"] = nullptr;
  return j;
}

inline Json to_json(const EpsRepReport& r) {
  Json j;
  j["bound_claimed"] = r.bound_claimed;
  j["observed_max"] = r.observed_max;
  j["witness_x"] = r.witness_x.str();
  j["witness_y"] = r.witness_y.str();
  j["pairs_checked"] = r.pairs_checked;
  j["cancellation_pairs"] = r.cancellation_pairs;
  j["max_cancellation_distance"] = r.max_cancellation_distance;
  return j;
}

inline Json to_json(const NontrivialityReport& r) {
  Json j;
  j["verdict"] = r.applicable ? "non-trivial" : "not applicable";
  j["reason"] = r.reason;
  j["sup_norm"] = r.sup_norm;
  j["eps"] = r.eps;
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    Json pj;
    pj["element"] = p.label;
    pj["verdict"] = to_string(p.verdict);
    probes.push_back(std::move(pj));
  }
  j["probes"] = std::move(probes);
  return j;
}

namespace detail {

inline void flatten(const Json& j, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& value : j) flatten(value, prefix + "[" + std::to_string(i++) + "]", out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace detail

// json: the document itself; csv: one header line and one value line with
// dotted keys; human: aligned key/value lines.
inline std::string render_report(const Json& j, ReportFormat format) {
  if (format == ReportFormat::json) return j.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> flat;
  detail::flatten(j, "", flat);
  std::string out;
  if (format == ReportFormat::csv) {
    for (std::size_t i = 0; i < flat.size(); ++i)
      out += detail::csv_quote(flat[i].first) + (i + 1 < flat.size() ? "," : "");
    out += "\n";
    for (std::size_t i = 0; i < flat.size(); ++i)
      out += detail::csv_quote(flat[i].second) + (i + 1 < flat.size() ? "," : "");
    out += "\n";
    return out;
  }
  std::size_t width = 0;
  for (const auto& [k, _] : flat) width = std::max(width, k.size());
  for (const auto& [k, v] : flat) out += k + std::string(width - k.size(), ' ') + "  " + v + "\n";
  return out;
}

}  // namespace qm
