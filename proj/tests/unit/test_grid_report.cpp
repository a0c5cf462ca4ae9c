#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "apsc/bisect.hpp"
#include "apsc/catalog.hpp"
#include "apsc/grid.hpp"
#include "apsc/report.hpp"
#include "apsc/table1.hpp"

using namespace apsc;
using doctest::Approx;

TEST_CASE("default grid") {
  const RGrid g = default_grid();
  CHECK(g.size() >= 195);
  CHECK(std::is_sorted(g.points.begin(), g.points.end()));
  CHECK(std::adjacent_find(g.points.begin(), g.points.end()) == g.points.end());
  CHECK(g.points.front() == Approx(1e-3));
  CHECK(g.points.back() == Approx(10.0));
  CHECK(std::find(g.points.begin(), g.points.end(), 3.0) != g.points.end());
  for (double r : g.points) CHECK(r > 0.0);
  CHECK(g.describe().find("199") != std::string::npos);
}

TEST_CASE("custom grids") {
  const RGrid g = make_grid(5.0, 10, 20, 1e-2);
  CHECK(g.points.back() == Approx(5.0));
  CHECK(g.points.front() == Approx(1e-2));
  CHECK_THROWS_AS(make_grid(1e-4, 10, 10, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(10, 1, 10), std::invalid_argument);
}

TEST_CASE("bisection") {
  const double t = bisect_threshold([](double x) { return x > 0.3; }, 0.0, 1.0, 1e-9);
  CHECK(t == Approx(0.3).epsilon(1e-8));
  CHECK_THROWS_AS(bisect_threshold([](double) { return true; }, 0.0, 1.0, 1e-6),
                  std::invalid_argument);
  CHECK_THROWS_AS(bisect_threshold([](double) { return false; }, 0.0, 1.0, 1e-6),
                  std::invalid_argument);
}

TEST_CASE("csv helpers") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(format_optional(std::nullopt).empty());
  CHECK(std::stod(format_optional(0.1)) == 0.1);
}

TEST_CASE("csv report layout") {
  const ConditionReport r = run_all_checks(find_model("blatz-ko"));
  const std::string csv = report_csv(r, "seed=20171\n[check]\nmodel=\"blatz-ko\"");
  std::istringstream in(csv);
  std::string line;
  int comments = 0, rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      ++comments;
      CHECK_FALSE(header);
      continue;
    }
    if (!header) {
      CHECK(line == "model,condition,status,witness_kind,witness,value,fitted,detail");
      header = true;
      continue;
    }
    ++rows;
    CHECK(line.rfind("blatz-ko,", 0) == 0);
  }
  CHECK(rows == static_cast<int>(r.verdicts.size()));
  CHECK(comments >= 3);
  CHECK(csv.find("# seed=20171") != std::string::npos);
  CHECK(csv.find("seed: 20171") != std::string::npos);

  const std::string text = report_text(r);
  CHECK(text.find("APS2") != std::string::npos);
  CHECK(text.find("K1") != std::string::npos);
}

TEST_CASE("table rows") {
  const auto rows = table1();
  REQUIRE(rows.size() == 14);
  for (const auto& r : rows) {
    CAPTURE(r.label);
    CHECK(r.match());
  }
  const auto hencky = std::find_if(rows.begin(), rows.end(),
                                   [](const Table1Row& r) { return r.model == "hencky"; });
  CHECK_FALSE(hencky->aps_convex);
  CHECK(hencky->aps_witness);
  CHECK(format_table1(rows).find("14/14") != std::string::npos);
  const auto svk = std::find_if(rows.begin(), rows.end(),
                                [](const Table1Row& r) { return r.model == "svk"; });
  CHECK(svk->k2 == Expect::NotApplicable);
  CHECK(std::string(to_string(svk->k2)) == "n.a.");
  CHECK(table1_csv(rows).find("SVK,svk") != std::string::npos);
}

TEST_CASE("table rows under parameter changes") {
  const auto mr = catalog_entry("mooney-rivlin");
  for (double a : {0.2, 0.5, 0.9}) {
    const Table1Row r = evaluate_row(mr, {{"alpha", a}});
    CHECK(r.match());
    CHECK(std::abs(*r.k1_b - (1 - a)) < 1e-8);
  }
  const auto ci = catalog_entry("ciarlet");
  for (auto [c1, c2] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
    const Table1Row r = evaluate_row(ci, {{"c1", c1}, {"c2", c2}});
    CHECK(r.match());
    CHECK(std::abs(*r.k1_b - c2 / (c1 + c2)) < 1e-8);
  }
  const Table1Row mn = evaluate_row(catalog_entry("mihai-neff"), {{"mu_tilde", 1.0}});
  CHECK(mn.k2 == Expect::No);
  CHECK(mn.match());
}
