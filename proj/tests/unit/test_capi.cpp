#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "dofppr/dofppr.h"
#include "dofppr/report.hpp"
#include "oracles.hpp"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  dofppr_string_free(s);
  return out;
}

dofppr_series* make_series(const std::vector<double>& t, const std::vector<double>& y,
                           const double* w = nullptr) {
  dofppr_series* s = nullptr;
  REQUIRE(dofppr_series_create(t.data(), y.data(), w, t.size(), &s) == DOFPPR_OK);
  return s;
}

}  // namespace

TEST_CASE("C API: Example 1 with a fixed penalty") {
  auto* s = make_series({0, 1, 2}, {0, 1, 0});
  dofppr_options o;
  dofppr_options_init(&o);
  o.fixed_gamma = 1;
  o.gamma = 1.0;
  dofppr_model* m = nullptr;
  REQUIRE(dofppr_fit(s, &o, &m) == DOFPPR_OK);
  CHECK(dofppr_model_segment_count(m) == 1);
  size_t first = 0, last = 0;
  int dof = 0;
  REQUIRE(dofppr_model_segment(m, 0, &first, &last, &dof) == DOFPPR_OK);
  CHECK(first == 1);
  CHECK(last == 3);
  CHECK(dof == 1);
  double residual = 0, energy = 0;
  REQUIRE(dofppr_model_energy(m, &residual, &energy) == DOFPPR_OK);
  CHECK(energy == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  double sel = 0, gcv = 0, gose = 0;
  REQUIRE(dofppr_model_gammas(m, &sel, &gcv, &gose) == DOFPPR_OK);
  CHECK(sel == 1.0);
  CHECK(std::isnan(gcv));
  CHECK(std::isnan(gose));
  const double ts[] = {0.0, 10.0};
  double out[2];
  REQUIRE(dofppr_model_predict(m, ts, 2, out) == DOFPPR_OK);
  CHECK(out[0] == doctest::Approx(1.0 / 3.0));
  CHECK(out[1] == doctest::Approx(1.0 / 3.0));
  CHECK(dofppr_model_segment(m, 1, &first, &last, &dof) == DOFPPR_ERR_INDEX);
  CHECK(std::string(dofppr_last_error()).size() > 0);
  dofppr_model_free(m);
  dofppr_series_free(s);
}

TEST_CASE("C API output equals the core bit for bit") {
  oracle::Gen g(2024);
  for (int trial = 0; trial < 8; ++trial) {
    const auto ts = oracle::random_series(g, g.index(2, 30), trial % 2 == 0);
    std::vector<double> t(ts.times().begin(), ts.times().end());
    std::vector<double> y(ts.values().begin(), ts.values().end());
    std::vector<double> w(ts.weights().begin(), ts.weights().end());
    auto* s = make_series(t, y, w.data());

    dofppr_options o;
    dofppr_options_init(&o);
    o.threads = 1 + trial % 3;
    o.selection = trial % 2 ? DOFPPR_SELECT_CV : DOFPPR_SELECT_OSE;
    o.metric = trial % 3 == 0 ? DOFPPR_METRIC_L1 : DOFPPR_METRIC_L2;
    dofppr_model* m = nullptr;
    REQUIRE(dofppr_fit(s, &o, &m) == DOFPPR_OK);
    char* json = nullptr;
    REQUIRE(dofppr_model_to_json(m, &json) == DOFPPR_OK);

    dofppr::FitOptions fo;
    fo.selection = trial % 2 ? dofppr::Selection::cv : dofppr::Selection::ose;
    fo.metric = trial % 3 == 0 ? dofppr::CvMetric::absolute : dofppr::CvMetric::squared;
    const auto core = dofppr::make_fit_report(ts, dofppr::fit(ts, fo));
    CHECK(take(json) == dofppr::to_json(core));

    std::vector<double> breaks(dofppr_model_segment_count(m) - 1);
    REQUIRE(dofppr_model_breaks(m, breaks.data()) == DOFPPR_OK);
    CHECK(breaks == core.breaks);

    std::vector<double> q = {-0.5, 0.1, 0.5, 0.9, 1.5};
    std::vector<double> pred(q.size());
    REQUIRE(dofppr_model_predict(m, q.data(), q.size(), pred.data()) == DOFPPR_OK);
    const auto result = dofppr::fit(ts, fo);
    for (std::size_t i = 0; i < q.size(); ++i) CHECK(pred[i] == dofppr::predict(result.model, q[i]));

    char* path = nullptr;
    REQUIRE(dofppr_path_json(s, &o, &path) == DOFPPR_OK);
    CHECK(take(path) == dofppr::to_json(dofppr::make_path_report(ts, dofppr::DofCaps{})));

    const double* tp = nullptr;
    const double* yp = nullptr;
    const double* wp = nullptr;
    REQUIRE(dofppr_series_data(s, &tp, &yp, &wp) == DOFPPR_OK);
    CHECK(dofppr_series_length(s) == t.size());
    CHECK(tp[0] == t[0]);
    CHECK(wp[0] == w[0]);

    dofppr_model_free(m);
    dofppr_series_free(s);
  }
}

TEST_CASE("C API errors") {
  dofppr_series* s = nullptr;
  const double t[] = {0.0, 1.0};
  const double y[] = {1.0, NAN};
  CHECK(dofppr_series_create(t, y, nullptr, 0, &s) == DOFPPR_ERR_EMPTY_INPUT);
  CHECK(dofppr_series_create(t, y, nullptr, 2, &s) == DOFPPR_ERR_INVALID_SAMPLE);
  CHECK(s == nullptr);
  CHECK(dofppr_series_create(nullptr, y, nullptr, 2, &s) == DOFPPR_ERR_INVALID_ARGUMENT);
  CHECK(dofppr_series_read_csv("/nonexistent.csv", DOFPPR_HEADER_DETECT, 3, &s) ==
        DOFPPR_ERR_IO);

  auto* ok = make_series({0, 1, 2}, {0, 1, 0});
  dofppr_options o;
  dofppr_options_init(&o);
  dofppr_model* m = nullptr;
  o.nu_total = -1;
  CHECK(dofppr_fit(ok, &o, &m) == DOFPPR_ERR_INVALID_ARGUMENT);
  dofppr_options_init(&o);
  o.fixed_gamma = 1;
  o.gamma = -2.0;
  CHECK(dofppr_fit(ok, &o, &m) == DOFPPR_ERR_INVALID_PENALTY);
  CHECK(m == nullptr);
  CHECK(std::string(dofppr_status_name(DOFPPR_ERR_INVALID_PENALTY)) == "InvalidPenalty");
  CHECK(dofppr_fit(nullptr, &o, &m) == DOFPPR_ERR_INVALID_ARGUMENT);

  char* csv = nullptr;
  char* truth = nullptr;
  CHECK(dofppr_generate("nope", nullptr, 10, 0.1, 1, &csv, &truth) ==
        DOFPPR_ERR_INVALID_ARGUMENT);
  CHECK(dofppr_generate("random", "{\"breaks\": [2], \"pieces\": [[1], [2]]}", 10, 0.1, 1, &csv,
                        &truth) == DOFPPR_ERR_INVALID_ARGUMENT);
  CHECK(dofppr_generate("random", "{oops", 10, 0.1, 1, &csv, &truth) == DOFPPR_ERR_PARSE);
  dofppr_series_free(ok);
}

TEST_CASE("C API default fit with CV selection") {
  auto* s = make_series({0, 1, 2, 3, 4, 5}, {2, 2, 2, 2, 2, 2});
  dofppr_model* m = nullptr;
  REQUIRE(dofppr_fit(s, nullptr, &m) == DOFPPR_OK);
  CHECK(dofppr_model_segment_count(m) == 1);
  int dof = 0;
  REQUIRE(dofppr_model_segment(m, 0, nullptr, nullptr, &dof) == DOFPPR_OK);
  CHECK(dof == 1);
  double sel = 0, gcv = 0, gose = 0;
  REQUIRE(dofppr_model_gammas(m, &sel, &gcv, &gose) == DOFPPR_OK);
  CHECK(gose >= gcv);
  CHECK(sel == gose);
  dofppr_model_free(m);
  dofppr_series_free(s);
}

TEST_CASE("C API generate") {
  char* csv = nullptr;
  char* truth = nullptr;
  REQUIRE(dofppr_generate("heavisine", nullptr, 500, 0.5, 7, &csv, &truth) == DOFPPR_OK);
  const auto text = take(csv);
  const auto j = nlohmann::json::parse(take(truth));
  CHECK(j["signal"] == "heavisine");
  CHECK(j["breaks"].get<std::vector<double>>() == std::vector<double>{0.3, 0.72});
  std::size_t rows = 0;
  for (char c : text) rows += c == '\n';
  CHECK(rows == 501);

  REQUIRE(dofppr_generate("heavisine", nullptr, 500, 0.5, 7, &csv, &truth) == DOFPPR_OK);
  CHECK(take(csv) == text);
  take(truth);

  REQUIRE(dofppr_generate("three-piece", nullptr, 100, 0.01, 3, &csv, &truth) == DOFPPR_OK);
  take(csv);
  const auto tp = nlohmann::json::parse(take(truth));
  CHECK(tp["breaks"].get<std::vector<double>>() == std::vector<double>{0.3, 0.65});
}

TEST_CASE("options read the thread count from the environment") {
  setenv("DOFPPR_THREADS", "3", 1);
  dofppr_options o;
  dofppr_options_init(&o);
  CHECK(o.threads == 3);
  setenv("DOFPPR_THREADS", "junk", 1);
  dofppr_options_init(&o);
  CHECK(o.threads == 1);
  unsetenv("DOFPPR_THREADS");
  dofppr_options_init(&o);
  CHECK(o.threads == 1);
  CHECK(o.nu_max_local == 11);
  CHECK(o.nu_total == 0);
  CHECK(o.exclude_interpolation == 1);
}
