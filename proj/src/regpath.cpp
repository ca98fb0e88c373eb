#include "dofppr/regpath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dofppr/error.hpp"

namespace dofppr {

RegularizationPath path_for_prefix(const BellmanTable& table, std::size_t r) {
  if (r < 1 || r > table.size()) {
    throw Error(ErrorCode::index_error, "prefix " + std::to_string(r) + " not in table");
  }
  std::vector<AffineFn> family;
  const int nu_hi = table.max_feasible(r);
  family.reserve(static_cast<std::size_t>(nu_hi));
  for (int nu = nu_hi; nu >= 1; --nu) family.push_back({table.value(r, nu), nu});

  RegularizationPath path;
  path.r = r;
  path.envelope = lower_envelope(family);
  path.solutions.reserve(path.envelope.pieces.size());
  for (const auto& piece : path.envelope.pieces) {
    path.solutions.push_back(backtrack(table, r, piece.slope));
  }
  return path;
}

FixedGammaSolution solve_fixed_gamma(const RegularizationPath& path, double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::invalid_penalty, "penalty must be finite and >= 0");
  }
  const std::size_t k = path.envelope.piece_at(gamma);
  FixedGammaSolution out;
  out.partition = path.solutions[k];
  out.nu = path.nu(k);
  out.energy = path.residual(k) + gamma * out.nu;
  return out;
}

namespace {

constexpr int grid_intervals = 1024;

bool constant_difference(const SegmentFit& left, const SegmentFit& right, double origin) {
  const auto pl = left.monomial_coeffs(origin);
  const auto pr = right.monomial_coeffs(origin);
  const std::size_t len = std::max(pl.size(), pr.size());
  for (std::size_t k = 1; k < len; ++k) {
    const double a = k < pl.size() ? pl[k] : 0.0;
    const double b = k < pr.size() ? pr[k] : 0.0;
    if (a != b) return false;
  }
  return true;
}

double bisect(const auto& q, double lo, double hi) {
  double qlo = q(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double qm = q(mid);
    if (qm == 0.0) return mid;
    if ((qm < 0.0) == (qlo < 0.0)) {
      lo = mid;
      qlo = qm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_min(const auto& f, double lo, double hi) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

}  // namespace

double place_break(const SegmentFit& left, const SegmentFit& right, double gap_lo,
                   double gap_hi) {
  if (!(gap_lo < gap_hi)) {
    throw Error(ErrorCode::invalid_argument, "break gap must be a proper interval");
  }
  const double mid = 0.5 * (gap_lo + gap_hi);
  if (constant_difference(left, right, mid)) return mid;

  auto q = [&](double t) { return evaluate(left, t) - evaluate(right, t); };
  std::vector<double> xs(grid_intervals + 1);
  std::vector<double> qs(grid_intervals + 1);
  const double h = (gap_hi - gap_lo) / grid_intervals;
  for (int i = 0; i <= grid_intervals; ++i) {
    xs[static_cast<std::size_t>(i)] = i == grid_intervals ? gap_hi : gap_lo + i * h;
    qs[static_cast<std::size_t>(i)] = q(xs[static_cast<std::size_t>(i)]);
  }

  for (std::size_t i = 0; i < static_cast<std::size_t>(grid_intervals); ++i) {
    if (i > 0 && qs[i] == 0.0) return xs[i];
    if ((qs[i] < 0.0 && qs[i + 1] > 0.0) || (qs[i] > 0.0 && qs[i + 1] < 0.0)) {
      return bisect(q, xs[i], xs[i + 1]);
    }
  }

  auto dist = [&](double t) { return std::abs(q(t)); };
  std::size_t best = 0;
  for (std::size_t i = 1; i < qs.size(); ++i) {
    if (std::abs(qs[i]) < std::abs(qs[best])) best = i;
  }
  const double lo = xs[best == 0 ? 0 : best - 1];
  const double hi = xs[std::min(best + 1, xs.size() - 1)];
  const double refined = golden_min(dist, lo, hi);
  double arg = refined;
  double value = dist(refined);
  for (double end : {gap_lo, gap_hi}) {
    const double v = dist(end);
    if (v <= value && (v < value || end < arg)) {
      arg = end;
      value = v;
    }
  }
  return arg;
}

PiecewisePolyModel materialize(SeriesView ts, const DofPartition& partition) {
  if (partition.segments.empty() || partition.segments.size() != partition.dofs.size()) {
    throw Error(ErrorCode::invalid_argument, "malformed partition");
  }
  PiecewisePolyModel model;
  for (std::size_t k = 0; k < partition.segments.size(); ++k) {
    const auto& seg = partition.segments[k];
    if (k > 0 && seg.begin != partition.segments[k - 1].end) {
      throw Error(ErrorCode::invalid_argument, "partition segments are not contiguous");
    }
    model.pieces.push_back(fit_segment(ts, seg, partition.dofs[k]));
    model.first_times.push_back(ts.times[seg.begin]);
    model.last_times.push_back(ts.times[seg.end - 1]);
  }
  for (std::size_t k = 1; k < model.pieces.size(); ++k) {
    model.breaks.push_back(place_break(model.pieces[k - 1], model.pieces[k],
                                       model.last_times[k - 1], model.first_times[k]));
  }
  return model;
}

double predict(const PiecewisePolyModel& model, double t) {
  auto k = static_cast<std::size_t>(
      std::upper_bound(model.breaks.begin(), model.breaks.end(), t) - model.breaks.begin());
  if (k > 0 && t <= model.last_times[k - 1]) --k;
  return evaluate(model.pieces[k], t);
}

}  // namespace dofppr
