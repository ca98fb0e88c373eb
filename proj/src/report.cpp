#include "dofppr/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "dofppr/error.hpp"

namespace dofppr {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_double(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

json caps_json(const CapsReport& c) {
  return {{"nu_max_local", c.nu_max_local},
          {"nu_total", c.nu_total ? json(*c.nu_total) : json(nullptr)},
          {"exclude_interpolation", c.exclude_interpolation}};
}

CapsReport caps_from(const json& j) {
  CapsReport c;
  c.nu_max_local = j.at("nu_max_local").get<int>();
  if (!j.at("nu_total").is_null()) c.nu_total = j.at("nu_total").get<int>();
  c.exclude_interpolation = j.at("exclude_interpolation").get<bool>();
  return c;
}

CapsReport caps_report(const DofCaps& caps) {
  return {caps.local_max, caps.total, caps.exclude_interpolation};
}

json path_json(const std::vector<PathInterval>& path) {
  json arr = json::array();
  for (const auto& p : path) {
    arr.push_back({{"gamma_lo", p.gamma_lo},
                   {"gamma_hi", opt(p.gamma_hi)},
                   {"nu", p.nu},
                   {"residual", p.residual},
                   {"changepoints", p.changepoints},
                   {"dofs", p.dofs}});
  }
  return arr;
}

std::vector<PathInterval> path_from(const json& arr) {
  std::vector<PathInterval> out;
  for (const auto& j : arr) {
    PathInterval p;
    p.gamma_lo = j.at("gamma_lo").get<double>();
    p.gamma_hi = opt_double(j, "gamma_hi");
    p.nu = j.at("nu").get<int>();
    p.residual = j.at("residual").get<double>();
    p.changepoints = j.at("changepoints").get<std::vector<std::size_t>>();
    p.dofs = j.at("dofs").get<std::vector<int>>();
    out.push_back(std::move(p));
  }
  return out;
}

template <typename Fn>
auto parse_guarded(const std::string& text, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<PathInterval> describe_path(const RegularizationPath& path) {
  std::vector<PathInterval> out;
  const auto& env = path.envelope;
  for (std::size_t k = 0; k < env.pieces.size(); ++k) {
    PathInterval p;
    p.gamma_lo = k == 0 ? 0.0 : env.cuts[k - 1];
    if (k < env.cuts.size()) p.gamma_hi = env.cuts[k];
    p.nu = path.nu(k);
    p.residual = path.residual(k);
    const auto& sol = path.solutions[k];
    for (std::size_t s = 0; s + 1 < sol.segments.size(); ++s) {
      p.changepoints.push_back(sol.segments[s].end);
    }
    p.dofs = sol.dofs;
    out.push_back(std::move(p));
  }
  return out;
}

FitReport make_fit_report(const TimeSeries& ts, const FitResult& result) {
  FitReport r;
  r.n = result.n;
  r.caps = caps_report(result.options.caps);
  r.selection = result.options.gamma ? "fixed"
                : result.options.selection == Selection::cv ? "cv"
                                                            : "ose";
  r.cv_metric = result.options.metric == CvMetric::squared ? "l2" : "l1";
  r.gamma = result.gamma;
  if (result.selection) {
    r.gamma_cv = result.selection->gamma_cv;
    r.gamma_ose = result.selection->gamma_ose;
    r.se_at_cv = result.selection->se_at_cv;
  }
  r.total_dof = result.solution.nu;
  r.residual = result.path.residual(result.path.envelope.piece_at(result.gamma));
  r.energy = result.solution.energy;
  const auto& model = result.model;
  const auto times = ts.times();
  for (std::size_t k = 0; k < model.pieces.size(); ++k) {
    const auto& fit = model.pieces[k];
    SegmentReport s;
    s.first = fit.segment.begin + 1;
    s.last = fit.segment.end;
    s.dof = fit.dof;
    s.t_first = times[fit.segment.begin];
    s.t_last = times[fit.segment.end - 1];
    s.newton_centers = fit.centers;
    s.newton_coeffs = fit.coeffs;
    s.monomial_coeffs = fit.monomial_coeffs(s.t_first);
    r.segments.push_back(std::move(s));
  }
  r.breaks = model.breaks;
  for (std::size_t k = 0; k < model.breaks.size(); ++k) {
    r.changepoints.push_back({model.pieces[k].segment.end, model.breaks[k]});
  }
  if (result.cv) r.cv = result.cv->cv;
  r.path = describe_path(result.path);
  return r;
}

PathReport make_path_report(const TimeSeries& ts, const DofCaps& caps, unsigned threads) {
  const Solver solver = solve_tables(ts.view(), caps, threads);
  const std::size_t n = ts.size();
  PathReport r;
  r.n = n;
  r.caps = caps_report(caps);
  r.path = describe_path(path_for_prefix(solver.table, n));
  for (int nu = 1; nu <= solver.table.max_feasible(n); ++nu) {
    r.bellman.push_back(solver.table.value(n, nu));
  }
  return r;
}

std::string to_json(const FitReport& r) {
  json segments = json::array();
  for (const auto& s : r.segments) {
    segments.push_back({{"first", s.first},
                        {"last", s.last},
                        {"dof", s.dof},
                        {"t_first", s.t_first},
                        {"t_last", s.t_last},
                        {"newton_centers", s.newton_centers},
                        {"newton_coeffs", s.newton_coeffs},
                        {"monomial_coeffs", s.monomial_coeffs}});
  }
  json cps = json::array();
  for (const auto& c : r.changepoints) {
    cps.push_back({{"last_index_left", c.last_index_left}, {"break", c.break_value}});
  }
  json j;
  j["n"] = r.n;
  j["caps"] = caps_json(r.caps);
  j["selection"] = r.selection;
  j["cv_metric"] = r.cv_metric;
  j["gamma"] = {{"selected", r.gamma},
                {"cv", opt(r.gamma_cv)},
                {"ose", opt(r.gamma_ose)},
                {"se_at_cv", opt(r.se_at_cv)}};
  j["model"] = {{"total_dof", r.total_dof},
                {"residual", r.residual},
                {"energy", r.energy},
                {"segments", segments},
                {"breaks", r.breaks},
                {"changepoints", cps}};
  j["cv"] = r.cv ? json{{"cuts", r.cv->cuts}, {"values", r.cv->values}} : json(nullptr);
  j["path"] = path_json(r.path);
  return j.dump(2) + "\n";
}

FitReport fit_report_from_json(const std::string& text) {
  return parse_guarded(text, [](const json& j) {
    FitReport r;
    r.n = j.at("n").get<std::size_t>();
    r.caps = caps_from(j.at("caps"));
    r.selection = j.at("selection").get<std::string>();
    r.cv_metric = j.at("cv_metric").get<std::string>();
    const auto& g = j.at("gamma");
    r.gamma = g.at("selected").get<double>();
    r.gamma_cv = opt_double(g, "cv");
    r.gamma_ose = opt_double(g, "ose");
    r.se_at_cv = opt_double(g, "se_at_cv");
    const auto& m = j.at("model");
    r.total_dof = m.at("total_dof").get<int>();
    r.residual = m.at("residual").get<double>();
    r.energy = m.at("energy").get<double>();
    for (const auto& s : m.at("segments")) {
      SegmentReport seg;
      seg.first = s.at("first").get<std::size_t>();
      seg.last = s.at("last").get<std::size_t>();
      seg.dof = s.at("dof").get<int>();
      seg.t_first = s.at("t_first").get<double>();
      seg.t_last = s.at("t_last").get<double>();
      seg.newton_centers = s.at("newton_centers").get<std::vector<double>>();
      seg.newton_coeffs = s.at("newton_coeffs").get<std::vector<double>>();
      seg.monomial_coeffs = s.at("monomial_coeffs").get<std::vector<double>>();
      r.segments.push_back(std::move(seg));
    }
    r.breaks = m.at("breaks").get<std::vector<double>>();
    for (const auto& c : m.at("changepoints")) {
      r.changepoints.push_back(
          {c.at("last_index_left").get<std::size_t>(), c.at("break").get<double>()});
    }
    if (!j.at("cv").is_null()) {
      r.cv = StepFunction{j.at("cv").at("cuts").get<std::vector<double>>(),
                          j.at("cv").at("values").get<std::vector<double>>()};
    }
    r.path = path_from(j.at("path"));
    return r;
  });
}

std::string to_json(const PathReport& r) {
  json j;
  j["n"] = r.n;
  j["caps"] = caps_json(r.caps);
  j["path"] = path_json(r.path);
  j["bellman"] = r.bellman;
  return j.dump(2) + "\n";
}

PathReport path_report_from_json(const std::string& text) {
  return parse_guarded(text, [](const json& j) {
    PathReport r;
    r.n = j.at("n").get<std::size_t>();
    r.caps = caps_from(j.at("caps"));
    r.path = path_from(j.at("path"));
    r.bellman = j.at("bellman").get<std::vector<double>>();
    return r;
  });
}

std::string to_csv(const FitReport& r) {
  std::ostringstream out;
  out << "first,last,dof,t_first,t_last,break_right\n";
  for (std::size_t k = 0; k < r.segments.size(); ++k) {
    const auto& s = r.segments[k];
    out << s.first << ',' << s.last << ',' << s.dof << ',' << fmt17(s.t_first) << ','
        << fmt17(s.t_last) << ',' << (k < r.breaks.size() ? fmt17(r.breaks[k]) : "") << '\n';
  }
  return out.str();
}

std::string to_json(const PiecewisePolySpec& spec) {
  json j;
  j["breaks"] = spec.breaks;
  j["pieces"] = spec.pieces;
  j["sigma"] = spec.sigma;
  j["n"] = spec.n;
  j["seed"] = spec.seed;
  return j.dump(2) + "\n";
}

PiecewisePolySpec spec_from_json(const std::string& text) {
  auto spec = parse_guarded(text, [](const json& j) {
    PiecewisePolySpec s;
    s.breaks = j.at("breaks").get<std::vector<double>>();
    s.pieces = j.at("pieces").get<std::vector<std::vector<double>>>();
    s.sigma = j.value("sigma", 0.0);
    s.n = j.value("n", std::size_t{100});
    s.seed = j.value("seed", std::uint64_t{0});
    return s;
  });
  spec.validate();
  return spec;
}

std::string series_to_csv(const TimeSeries& ts) {
  const auto t = ts.times();
  const auto y = ts.values();
  const auto w = ts.weights();
  const bool weighted = std::any_of(w.begin(), w.end(), [](double v) { return v != 1.0; });
  std::ostringstream out;
  out << (weighted ? "t,y,w\n" : "t,y\n");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << fmt17(t[i]) << ',' << fmt17(y[i]);
    if (weighted) out << ',' << fmt17(w[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace dofppr
