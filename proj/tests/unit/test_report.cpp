#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dofppr/csv.hpp"
#include "dofppr/error.hpp"
#include "dofppr/report.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

namespace {

dofppr::ErrorCode parse_code(const std::string& text, dofppr::CsvOptions opts = {}) {
  std::istringstream in(text);
  try {
    dofppr::read_csv(in, opts);
  } catch (const dofppr::Error& e) {
    return e.code();
  }
  FAIL("no error");
  return dofppr::ErrorCode::invalid_argument;
}

dofppr::TimeSeries csv(const std::string& text, dofppr::CsvOptions opts = {}) {
  std::istringstream in(text);
  return dofppr::read_csv(in, opts);
}

}  // namespace

TEST_CASE("fit report JSON round-trips exactly") {
  oracle::Gen g(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ts = oracle::random_series(g, g.index(1, 30), trial % 2 == 0);
    dofppr::FitOptions opts;
    if (trial % 3 == 0) opts.gamma = g.uniform(0, 1);
    if (trial % 4 == 1) opts.caps.total = 5;
    if (trial % 5 == 2) opts.metric = dofppr::CvMetric::absolute;
    const auto report = dofppr::make_fit_report(ts, dofppr::fit(ts, opts));
    const auto text = dofppr::to_json(report);
    const auto back = dofppr::fit_report_from_json(text);
    CHECK(back == report);
    CHECK(dofppr::to_json(back) == text);
  }
}

TEST_CASE("path intervals tile the half line") {
  oracle::Gen g(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ts = oracle::random_series(g, g.index(1, 30));
    const auto report = dofppr::make_path_report(ts, dofppr::DofCaps{});
    REQUIRE(!report.path.empty());
    CHECK(report.path.front().gamma_lo == 0.0);
    CHECK(!report.path.back().gamma_hi);
    for (std::size_t k = 0; k + 1 < report.path.size(); ++k) {
      REQUIRE(report.path[k].gamma_hi);
      CHECK(*report.path[k].gamma_hi == report.path[k + 1].gamma_lo);
      CHECK(report.path[k].gamma_lo < *report.path[k].gamma_hi);
      CHECK(report.path[k].nu > report.path[k + 1].nu);
    }
    CHECK(dofppr::path_report_from_json(dofppr::to_json(report)) == report);
    CHECK(report.bellman.size() == std::min<std::size_t>(ts.size(), 1000));
  }
}

TEST_CASE("Example 1 fit report") {
  const auto ts = testing::example1();
  dofppr::FitOptions opts;
  opts.gamma = 1.0;
  const auto r = dofppr::make_fit_report(ts, dofppr::fit(ts, opts));
  CHECK(r.selection == "fixed");
  REQUIRE(r.segments.size() == 1);
  CHECK(r.segments[0].first == 1);
  CHECK(r.segments[0].last == 3);
  CHECK(r.segments[0].dof == 1);
  CHECK(r.energy == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(r.breaks.empty());
  CHECK(!r.cv);
}

TEST_CASE("changepoints report both conventions") {
  const auto ts = testing::series({0, 1, 2, 3, 4, 5}, {0, 0, 0, 5, 5, 5});
  dofppr::FitOptions opts;
  opts.gamma = 0.1;
  const auto r = dofppr::make_fit_report(ts, dofppr::fit(ts, opts));
  REQUIRE(r.changepoints.size() == 1);
  CHECK(r.changepoints[0].last_index_left == 3);
  CHECK(r.changepoints[0].break_value == 2.5);
  CHECK(r.segments[1].first == 4);
  const auto text = dofppr::to_csv(r);
  CHECK(text.rfind("first,last,dof,t_first,t_last,break_right\n", 0) == 0);
  CHECK(text.find("1,3,1,0,2,2.5\n") != std::string::npos);
  CHECK(text.find("4,6,1,3,5,\n") != std::string::npos);
}

TEST_CASE("spec JSON round-trips and validates") {
  const auto spec = dofppr::fixture_spec();
  const auto back = dofppr::spec_from_json(dofppr::to_json(spec));
  CHECK(back.breaks == spec.breaks);
  CHECK(back.pieces == spec.pieces);
  CHECK(back.sigma == spec.sigma);
  CHECK(back.n == spec.n);
  CHECK_THROWS_AS(dofppr::spec_from_json("{\"breaks\": [0.5], \"pieces\": [[1]]}"),
                  dofppr::Error);
  CHECK_THROWS_AS(dofppr::spec_from_json("not json"), dofppr::Error);
}

TEST_CASE("CSV header handling") {
  CHECK(csv("t,y\n0,1\n1,2\n").size() == 2);
  CHECK(csv("0,1\n1,2\n").size() == 2);
  CHECK(csv("\n0,1\n\n1,2\n\n").size() == 2);
  dofppr::CsvOptions present;
  present.header = dofppr::HeaderMode::present;
  CHECK(csv("0,1\n1,2\n", present).size() == 1);
  dofppr::CsvOptions absent;
  absent.header = dofppr::HeaderMode::absent;
  CHECK(parse_code("t,y\n0,1\n", absent) == dofppr::ErrorCode::parse_error);
}

TEST_CASE("CSV weights") {
  const auto ts = csv("t,y,w\n0,1,2\n1,2,\n2,3,0.5\n");
  CHECK(std::vector<double>(ts.weights().begin(), ts.weights().end()) ==
        std::vector<double>{2, 1, 0.5});
  dofppr::CsvOptions none;
  none.weights_col = 0;
  const auto unweighted = csv("t,y,w\n0,1,2\n", none);
  CHECK(unweighted.weights()[0] == 1.0);
  dofppr::CsvOptions col4;
  col4.weights_col = 4;
  const auto fourth = csv("0,1,x,3\n", col4);
  CHECK(fourth.weights()[0] == 3.0);
  CHECK(parse_code("0,1,-2\n") == dofppr::ErrorCode::invalid_sample);
}

TEST_CASE("malformed CSV reports the line") {
  CHECK(parse_code("t,y\n0,1\n1,abc\n") == dofppr::ErrorCode::parse_error);
  CHECK(parse_code("0\n") == dofppr::ErrorCode::parse_error);
  CHECK(parse_code("0,1,zz\n") == dofppr::ErrorCode::parse_error);
  CHECK(parse_code("") == dofppr::ErrorCode::empty_input);
  CHECK(parse_code("t,y\n") == dofppr::ErrorCode::empty_input);
  std::istringstream in("t,y\n0,1\n1,abc\n");
  try {
    dofppr::read_csv(in);
  } catch (const dofppr::Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(dofppr::read_csv_file("/nonexistent/file.csv"), dofppr::Error);
}

TEST_CASE("series CSV round-trips") {
  oracle::Gen g(1);
  for (bool weighted : {false, true}) {
    const auto ts = oracle::random_series(g, 25, weighted);
    const auto text = dofppr::series_to_csv(ts);
    CHECK(csv(text) == ts);
    CHECK((text.rfind("t,y,w\n", 0) == 0) == weighted);
  }
}
