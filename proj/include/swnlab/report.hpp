#pragma once

// Check records and their JSON / CSV renderings.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace swnlab {

inline constexpr int kSchemaVersion = 1;
inline constexpr double kAbsoluteFloor = 1e-12;

using Json = nlohmann::ordered_json;

struct CheckReport {
  std::string suite;
  std::string name;
  Json params = Json::object();
  Json lhs;
  Json rhs;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  double scale = 0.0;
  bool pass = false;
  std::vector<std::uint64_t> seeds;
  std::string note;  // failure detail, empty when nothing to add
};

/// Numeric verdict. The error is |lhs - rhs| / scale where the scale is
/// max(|lhs|, |rhs|) unless a natural scale is given; below 1e-12 the
/// absolute difference is used instead. Non-finite values fail.
inline CheckReport numeric_check(std::string suite, std::string name, Json params, double lhs, double rhs,
                                 double tolerance, std::optional<double> natural_scale = std::nullopt) {
  CheckReport r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.abs_error = std::abs(lhs - rhs);
  r.scale = natural_scale.value_or(std::max(std::abs(lhs), std::abs(rhs)));
  r.rel_error = r.scale < kAbsoluteFloor ? r.abs_error : r.abs_error / r.scale;
  r.pass = std::isfinite(lhs) && std::isfinite(rhs) && std::isfinite(r.rel_error) && r.rel_error <= tolerance;
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) r.note = "non-finite value";
  return r;
}

/// A check whose value is already a relative residual compared against 0.
inline CheckReport residual_check(std::string suite, std::string name, Json params, double residual,
                                  double tolerance) {
  CheckReport r = numeric_check(std::move(suite), std::move(name), std::move(params), residual, 0.0, tolerance, 1.0);
  return r;
}

/// A check that could not be computed.
inline CheckReport failed_check(std::string suite, std::string name, Json params, double tolerance, std::string why) {
  CheckReport r;
  r.suite = std::move(suite);
  r.name = std::move(name);
  r.params = std::move(params);
  r.tolerance = tolerance;
  r.abs_error = r.rel_error = INFINITY;
  r.note = std::move(why);
  return r;
}

inline Json to_json(const CheckReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = r.suite;
  j["check"] = r.name;
  j["params"] = r.params;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  auto num = [](double x) { return std::isfinite(x) ? Json(x) : Json(std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf")); };
  j["abs_error"] = num(r.abs_error);
  j["rel_error"] = num(r.rel_error);
  j["scale"] = num(r.scale);
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["seeds"] = r.seeds;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline std::string to_json_text(const std::vector<CheckReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

/// 17 significant digits: every double round-trips.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}
inline std::string csv_value(const Json& v) {
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_string()) return csv_field(v.get<std::string>());
  if (v.is_null()) return "";
  return csv_field(v.dump());
}
}  // namespace detail

inline std::string to_csv_text(const std::vector<CheckReport>& reports) {
  std::string out = "schema_version,suite,check,params,lhs,rhs,abs_error,rel_error,scale,tolerance,pass,note\n";
  for (const auto& r : reports) {
    out += std::to_string(kSchemaVersion) + ",";
    out += detail::csv_field(r.suite) + ",";
    out += detail::csv_field(r.name) + ",";
    out += detail::csv_field(r.params.dump()) + ",";
    out += detail::csv_value(r.lhs) + ",";
    out += detail::csv_value(r.rhs) + ",";
    out += format_double(r.abs_error) + ",";
    out += format_double(r.rel_error) + ",";
    out += format_double(r.scale) + ",";
    out += format_double(r.tolerance) + ",";
    out += std::string(r.pass ? "true" : "false") + ",";
    out += detail::csv_field(r.note) + "\n";
  }
  return out;
}

inline bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

inline double max_rel_error(const std::vector<CheckReport>& reports) {
  double m = 0.0;
  for (const auto& r : reports) m = std::max(m, r.rel_error);
  return m;
}

}  // namespace swnlab
