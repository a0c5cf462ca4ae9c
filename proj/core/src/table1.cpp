#include "apsc/table1.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "apsc/report.hpp"

namespace apsc {

namespace {

std::string b_text(const std::optional<double>& b) {
  if (!b) return "No";
  char buf[32];
  std::snprintf(buf, sizeof buf, "b=%.10g", *b);
  return buf;
}

std::string convex_text(bool yes, const std::optional<double>& witness) {
  if (yes) return "Yes";
  if (!witness) return "No";
  char buf[48];
  std::snprintf(buf, sizeof buf, "No (gamma=%.4g)", *witness);
  return buf;
}

}  // namespace

const char* to_string(Expect e) {
  switch (e) {
    case Expect::Yes: return "Yes";
    case Expect::No: return "No";
    case Expect::NotApplicable: return "n.a.";
  }
  return "?";
}

Table1Row evaluate_row(const CatalogEntry& entry, const ParamTable& params, const RGrid& grid,
                       double tol, double b_tol) {
  const EnergyModel m = params.empty() ? entry.model : entry.model.with_params(params);
  Table1Row row;
  row.label = entry.label;
  row.model = m.name();
  row.params = m.params();

  const Verdict aps2 = check_aps2(m, grid, tol);
  row.aps_convex = aps2.passed();
  row.aps_witness = aps2.witness;

  const Verdict k1 = check_k1(m, grid);
  if (k1.passed()) row.k1_b = k1.fitted;

  const Verdict k2 = check_k2(m, grid);
  row.k2 = k2.status == Status::Pass   ? Expect::Yes
           : k2.status == Status::Fail ? Expect::No
                                       : Expect::NotApplicable;

  row.expected_aps_convex = entry.expected.aps_convex;
  row.expected_b = entry.expected.k1_b(row.params);
  row.expected_k2 = entry.expected.k2(row.params);
  row.rank1 = entry.expected.rank1;

  row.aps_match = row.aps_convex == row.expected_aps_convex;
  row.b_match = row.k1_b.has_value() == row.expected_b.has_value() &&
                (!row.k1_b || std::abs(*row.k1_b - *row.expected_b) < b_tol);
  row.k2_match = row.k2 == row.expected_k2;
  return row;
}

std::vector<Table1Row> table1(const RGrid& grid, double tol) {
  std::vector<Table1Row> rows;
  for (const auto& e : catalog()) rows.push_back(evaluate_row(e, {}, grid, tol));
  return rows;
}

std::string format_table1(const std::vector<Table1Row>& rows) {
  std::ostringstream o;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %-17s %-9s %-14s %-9s %-5s %-5s %s\n", "model",
                "APS-convex", "(table)", "K1", "(table)", "K2", "(tbl)", "match");
  o << line;
  int ok = 0;
  for (const auto& r : rows) {
    ok += r.match();
    std::snprintf(line, sizeof line, "%-24s %-17s %-9s %-14s %-9s %-5s %-5s %s\n",
                  r.label.c_str(), convex_text(r.aps_convex, r.aps_witness).c_str(),
                  r.expected_aps_convex ? "Yes" : "No", b_text(r.k1_b).c_str(),
                  b_text(r.expected_b).c_str(), to_string(r.k2), to_string(r.expected_k2),
                  r.match() ? "ok" : "MISMATCH");
    o << line;
  }
  o << ok << "/" << rows.size() << " rows match\n";
  return o.str();
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream o;
  o << "label,model,aps_convex,expected_aps_convex,aps_witness,k1_b,expected_b,k2,expected_k2,"
       "rank1,match\n";
  for (const auto& r : rows) {
    o << csv_escape(r.label) << ',' << r.model << ',' << (r.aps_convex ? "Yes" : "No") << ','
      << (r.expected_aps_convex ? "Yes" : "No") << ',' << format_optional(r.aps_witness) << ','
      << format_optional(r.k1_b) << ',' << format_optional(r.expected_b) << ','
      << to_string(r.k2) << ',' << to_string(r.expected_k2) << ',' << csv_escape(r.rank1) << ','
      << (r.match() ? "yes" : "no") << '\n';
  }
  return o.str();
}

}  // namespace apsc
