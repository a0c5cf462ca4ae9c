#include "apsc/report.hpp"

#include <cstdio>
#include <sstream>

namespace apsc {

namespace {

std::string commented(const std::string& text) {
  std::ostringstream out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out << "# " << line << '\n';
  return out.str();
}

std::string metadata(const ConditionReport& r) {
  std::ostringstream o;
  o << "model: " << r.model << '\n';
  o << "params:";
  if (r.params.empty()) o << " (none)";
  for (const auto& [k, v] : r.params) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %s=%.17g", k.c_str(), v);
    o << buf;
  }
  o << '\n';
  if (!r.volumetric.empty()) o << "volumetric: " << r.volumetric << '\n';
  for (const auto& n : r.notes) o << "note: " << n << '\n';
  o << "grid: " << r.grid << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "tol: %g\n", r.tol);
  o << buf << "seed: " << r.seed << '\n';
  return o.str();
}

std::string short_num(const std::optional<double>& x) {
  if (!x) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", *x);
  return buf;
}

}  // namespace

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_optional(const std::optional<double>& x) {
  if (!x) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *x);
  return buf;
}

std::string report_csv(const ConditionReport& r, const std::string& config) {
  std::ostringstream o;
  o << commented(config) << commented(metadata(r));
  o << "model,condition,status,witness_kind,witness,value,fitted,detail\n";
  for (const auto& v : r.verdicts) {
    o << csv_escape(r.model) << ',' << csv_escape(v.condition) << ',' << to_string(v.status) << ','
      << v.witness_kind << ',' << format_optional(v.witness) << ',' << format_optional(v.value)
      << ',' << format_optional(v.fitted) << ',' << csv_escape(v.detail) << '\n';
  }
  return o.str();
}

std::string report_text(const ConditionReport& r, const std::string& config) {
  std::ostringstream o;
  o << commented(config) << metadata(r) << '\n';
  char line[512];
  std::snprintf(line, sizeof line, "%-16s %-13s %-18s %-14s %-14s %s\n", "condition", "verdict",
                "witness", "value", "fitted", "detail");
  o << line;
  for (const auto& v : r.verdicts) {
    const std::string w = v.witness ? v.witness_kind + "=" + short_num(v.witness) : "-";
    std::snprintf(line, sizeof line, "%-16s %-13s %-18s %-14s %-14s %s\n", v.condition.c_str(),
                  to_string(v.status), w.c_str(), short_num(v.value).c_str(),
                  short_num(v.fitted).c_str(), v.detail.c_str());
    o << line;
  }
  return o.str();
}

}  // namespace apsc
