#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apsc/catalog.hpp"
#include "apsc/conditions.hpp"

namespace apsc {

/// Computed against tabulated columns for one catalog row.
struct Table1Row {
  std::string label;
  std::string model;
  ParamTable params;

  bool aps_convex = false;
  std::optional<double> aps_witness;  // R of the first APS2 violation
  std::optional<double> k1_b;
  Expect k2 = Expect::NotApplicable;

  bool expected_aps_convex = false;
  std::optional<double> expected_b;
  Expect expected_k2 = Expect::NotApplicable;
  std::string rank1;

  bool aps_match = false;
  bool b_match = false;
  bool k2_match = false;
  bool match() const { return aps_match && b_match && k2_match; }
};

const char* to_string(Expect e);

/// Runs APS2, K1 and K2 on `entry.model` with `params` overriding its defaults.
Table1Row evaluate_row(const CatalogEntry& entry, const ParamTable& params = {},
                       const RGrid& grid = default_grid(), double tol = 1e-9,
                       double b_tol = 1e-8);

std::vector<Table1Row> table1(const RGrid& grid = default_grid(), double tol = 1e-9);

/// Fixed-width text with one line per row and a final match count.
std::string format_table1(const std::vector<Table1Row>& rows);
std::string table1_csv(const std::vector<Table1Row>& rows);

}  // namespace apsc
