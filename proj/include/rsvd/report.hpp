#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "rsvd/campaign.hpp"
#include "rsvd/errors.hpp"

namespace rsvd {

enum class ReportFormat { json, csv };

namespace detail {

// 17 significant digits: enough for exact double round-trips.
inline std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_double_csv(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

// Single JSON object with a fixed key order, so identical reports
// serialize to identical bytes.
inline std::string report_to_json(const ExperimentReport& rep) {
  using detail::fmt_double;
  using detail::json_escape;
  const CampaignConfig& c = rep.config;
  std::string s;
  s.reserve(256 + rep.trials.size() * 256);
  s += "{\n  \"config\": {\n";
  s += "    \"kind\": " + json_escape(to_string(c.kind)) + ",\n";
  s += "    \"method\": " + json_escape(to_string(c.method)) + ",\n";
  s += "    \"m\": " + std::to_string(c.m) + ",\n";
  s += "    \"n\": " + std::to_string(c.n) + ",\n";
  s += "    \"k\": " + std::to_string(c.k) + ",\n";
  s += "    \"p\": " + std::to_string(c.p) + ",\n";
  s += "    \"epsilon\": " + fmt_double(c.epsilon) + ",\n";
  s += "    \"alpha\": " + fmt_double(c.alpha) + ",\n";
  s += "    \"trials\": " + std::to_string(c.trials) + ",\n";
  s += "    \"seed\": " + std::to_string(c.seed) + ",\n";
  s += "    \"slack\": " + fmt_double(c.slack) + ",\n";
  s += "    \"required_rate_override\": " +
       fmt_double(c.required_rate_override) + ",\n";
  s += "    \"matrix_path\": " + json_escape(c.matrix_path) + ",\n";
  s += "    \"spectrum\": {\n";
  s += "      \"kind\": " + json_escape(to_string(c.spectrum.kind)) + ",\n";
  s += "      \"ratio\": " + fmt_double(c.spectrum.ratio) + ",\n";
  s += "      \"exponent\": " + fmt_double(c.spectrum.exponent) + ",\n";
  s += "      \"gap_position\": " + std::to_string(c.spectrum.gap_position) +
       ",\n";
  s += "      \"gap_ratio\": " + fmt_double(c.spectrum.gap_ratio) + ",\n";
  s += "      \"values\": [";
  for (std::size_t i = 0; i < c.spectrum.values.size(); ++i) {
    if (i) s += ", ";
    s += fmt_double(c.spectrum.values[i]);
  }
  s += "]\n    }\n  },\n  \"trials\": [";
  for (std::size_t i = 0; i < rep.trials.size(); ++i) {
    const TrialRecord& t = rep.trials[i];
    s += (i ? ",\n    {" : "\n    {");
    s += "\"trial\": " + std::to_string(t.trial);
    s += ", \"seed\": " + std::to_string(t.seed);
    s += ", \"method\": " + json_escape(t.method);
    s += ", \"theorem\": " + json_escape(t.theorem);
    s += ", \"budget\": " + std::to_string(t.budget);
    s += ", \"spectral_err_sq\": " + fmt_double(t.spectral_err_sq);
    s += ", \"frobenius_err_sq\": " + fmt_double(t.frobenius_err_sq);
    s += ", \"tan_theta_init\": " + fmt_double(t.tan_theta_init);
    s += ", \"nullspace_residual\": " + fmt_double(t.nullspace_residual);
    s += ", \"bound\": " + fmt_double(t.bound);
    s += ", \"bound_frobenius\": " + fmt_double(t.bound_frobenius);
    s += std::string(", \"passed\": ") + (t.passed ? "true" : "false");
    s += "}";
  }
  s += "\n  ],\n  \"aggregate\": {\n";
  s += "    \"pass_rate\": " + fmt_double(rep.pass_rate) + ",\n";
  s += "    \"required_rate\": " + fmt_double(rep.required_rate) + ",\n";
  s += std::string("    \"overall_pass\": ") +
       (rep.overall_pass ? "true" : "false") + "\n  }\n}\n";
  return s;
}

// Header row plus one row per trial.
inline std::string report_to_csv(const ExperimentReport& rep) {
  using detail::csv_field;
  using detail::fmt_double_csv;
  std::string s =
      "trial,seed,method,theorem,budget,spectral_err_sq,frobenius_err_sq,"
      "tan_theta_init,nullspace_residual,bound,bound_frobenius,passed\n";
  for (const TrialRecord& t : rep.trials) {
    s += std::to_string(t.trial);
    s += ',';
    s += std::to_string(t.seed);
    s += ',';
    s += csv_field(t.method);
    s += ',';
    s += csv_field(t.theorem);
    s += ',';
    s += std::to_string(t.budget);
    s += ',';
    s += fmt_double_csv(t.spectral_err_sq);
    s += ',';
    s += fmt_double_csv(t.frobenius_err_sq);
    s += ',';
    s += fmt_double_csv(t.tan_theta_init);
    s += ',';
    s += fmt_double_csv(t.nullspace_residual);
    s += ',';
    s += fmt_double_csv(t.bound);
    s += ',';
    s += fmt_double_csv(t.bound_frobenius);
    s += ',';
    s += t.passed ? "true" : "false";
    s += '\n';
  }
  return s;
}

inline void emit_report(const ExperimentReport& rep, ReportFormat format,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << (format == ReportFormat::json ? report_to_json(rep)
                                       : report_to_csv(rep));
  if (!out) throw IoError("failed writing '" + path + "'");
}

namespace detail {

inline double json_double(const nlohmann::json& v) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

inline SpectrumSpec::Kind spectrum_kind_from_string(const std::string& s) {
  if (s == "geometric") return SpectrumSpec::Kind::geometric;
  if (s == "polynomial") return SpectrumSpec::Kind::polynomial;
  if (s == "step") return SpectrumSpec::Kind::step;
  if (s == "explicit") return SpectrumSpec::Kind::explicit_list;
  throw ParseError("unknown spectrum kind '" + s + "'", 0);
}

inline CampaignKind campaign_kind_from_string(const std::string& s) {
  if (s == "initialization") return CampaignKind::initialization;
  if (s == "lanczos-random") return CampaignKind::lanczos_random;
  if (s == "power-random") return CampaignKind::power_random;
  if (s == "gap-norm") return CampaignKind::gap_norm;
  throw ParseError("unknown campaign kind '" + s + "'", 0);
}

inline MethodChoice method_choice_from_string(const std::string& s) {
  if (s == "power") return MethodChoice::power;
  if (s == "lanczos") return MethodChoice::lanczos;
  if (s == "both") return MethodChoice::both;
  throw ParseError("unknown method '" + s + "'", 0);
}

}  // namespace detail

// Inverse of report_to_json; used by the round-trip tests.
inline ExperimentReport parse_report_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExperimentReport rep;
  const nlohmann::json& c = j.at("config");
  rep.config.kind =
      detail::campaign_kind_from_string(c.at("kind").get<std::string>());
  rep.config.method =
      detail::method_choice_from_string(c.at("method").get<std::string>());
  rep.config.m = c.at("m").get<std::size_t>();
  rep.config.n = c.at("n").get<std::size_t>();
  rep.config.k = c.at("k").get<std::size_t>();
  rep.config.p = c.at("p").get<std::size_t>();
  rep.config.epsilon = detail::json_double(c.at("epsilon"));
  rep.config.alpha = detail::json_double(c.at("alpha"));
  rep.config.trials = c.at("trials").get<std::size_t>();
  rep.config.seed = c.at("seed").get<std::uint64_t>();
  rep.config.slack = detail::json_double(c.at("slack"));
  rep.config.required_rate_override =
      detail::json_double(c.at("required_rate_override"));
  rep.config.matrix_path = c.at("matrix_path").get<std::string>();
  const nlohmann::json& sp = c.at("spectrum");
  rep.config.spectrum.kind =
      detail::spectrum_kind_from_string(sp.at("kind").get<std::string>());
  rep.config.spectrum.ratio = detail::json_double(sp.at("ratio"));
  rep.config.spectrum.exponent = detail::json_double(sp.at("exponent"));
  rep.config.spectrum.gap_position =
      sp.at("gap_position").get<std::size_t>();
  rep.config.spectrum.gap_ratio = detail::json_double(sp.at("gap_ratio"));
  for (const nlohmann::json& v : sp.at("values"))
    rep.config.spectrum.values.push_back(detail::json_double(v));
  rep.config.spectrum.m = rep.config.m;
  rep.config.spectrum.n = rep.config.n;
  for (const nlohmann::json& t : j.at("trials")) {
    TrialRecord rec;
    rec.trial = t.at("trial").get<std::size_t>();
    rec.seed = t.at("seed").get<std::uint64_t>();
    rec.method = t.at("method").get<std::string>();
    rec.theorem = t.at("theorem").get<std::string>();
    rec.budget = t.at("budget").get<std::size_t>();
    rec.spectral_err_sq = detail::json_double(t.at("spectral_err_sq"));
    rec.frobenius_err_sq = detail::json_double(t.at("frobenius_err_sq"));
    rec.tan_theta_init = detail::json_double(t.at("tan_theta_init"));
    rec.nullspace_residual = detail::json_double(t.at("nullspace_residual"));
    rec.bound = detail::json_double(t.at("bound"));
    rec.bound_frobenius = detail::json_double(t.at("bound_frobenius"));
    rec.passed = t.at("passed").get<bool>();
    rep.trials.push_back(std::move(rec));
  }
  const nlohmann::json& a = j.at("aggregate");
  rep.pass_rate = detail::json_double(a.at("pass_rate"));
  rep.required_rate = detail::json_double(a.at("required_rate"));
  rep.overall_pass = a.at("overall_pass").get<bool>();
  return rep;
}

namespace detail {

inline bool same_double(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

}  // namespace detail

// Field-by-field equality with NaN == NaN, for round-trip checks.
// Spectrum shape/seed are derived fields and excluded.
inline bool reports_equal(const ExperimentReport& a,
                          const ExperimentReport& b) {
  using detail::same_double;
  const CampaignConfig& x = a.config;
  const CampaignConfig& y = b.config;
  if (x.kind != y.kind || x.method != y.method || x.m != y.m || x.n != y.n ||
      x.k != y.k || x.p != y.p || !same_double(x.epsilon, y.epsilon) ||
      !same_double(x.alpha, y.alpha) || x.trials != y.trials ||
      x.seed != y.seed || !same_double(x.slack, y.slack) ||
      !same_double(x.required_rate_override, y.required_rate_override) ||
      x.matrix_path != y.matrix_path)
    return false;
  if (x.spectrum.kind != y.spectrum.kind ||
      !same_double(x.spectrum.ratio, y.spectrum.ratio) ||
      !same_double(x.spectrum.exponent, y.spectrum.exponent) ||
      x.spectrum.gap_position != y.spectrum.gap_position ||
      !same_double(x.spectrum.gap_ratio, y.spectrum.gap_ratio) ||
      x.spectrum.values.size() != y.spectrum.values.size())
    return false;
  for (std::size_t i = 0; i < x.spectrum.values.size(); ++i)
    if (!same_double(x.spectrum.values[i], y.spectrum.values[i])) return false;
  if (a.trials.size() != b.trials.size()) return false;
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    const TrialRecord& s = a.trials[i];
    const TrialRecord& t = b.trials[i];
    if (s.trial != t.trial || s.seed != t.seed || s.method != t.method ||
        s.theorem != t.theorem || s.budget != t.budget ||
        !same_double(s.spectral_err_sq, t.spectral_err_sq) ||
        !same_double(s.frobenius_err_sq, t.frobenius_err_sq) ||
        !same_double(s.tan_theta_init, t.tan_theta_init) ||
        !same_double(s.nullspace_residual, t.nullspace_residual) ||
        !same_double(s.bound, t.bound) ||
        !same_double(s.bound_frobenius, t.bound_frobenius) ||
        s.passed != t.passed)
      return false;
  }
  return same_double(a.pass_rate, b.pass_rate) &&
         same_double(a.required_rate, b.required_rate) &&
         a.overall_pass == b.overall_pass;
}

}  // namespace rsvd
