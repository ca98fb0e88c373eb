#include "dofppr/modelselect.hpp"

#include <algorithm>
#include <cmath>

#include "dofppr/error.hpp"

namespace dofppr {

CvFunction cv_function(std::span<const RegularizationPath> paths, SeriesView ts,
                       CvMetric metric, unsigned threads) {
  const std::size_t n = ts.size();
  if (n < 2) throw Error(ErrorCode::not_enough_data, "rolling CV needs at least 2 samples");
  if (paths.size() != n - 1) {
    throw Error(ErrorCode::invalid_argument, "need one path per proper prefix");
  }

  // One prediction per (prefix, envelope piece), from the rightmost segment.
  std::vector<PredictionRequest> requests;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const auto& path = paths[k];
    if (path.r != k + 1) throw Error(ErrorCode::invalid_argument, "paths out of order");
    for (const auto& sol : path.solutions) {
      requests.push_back({sol.segments.back(), sol.dofs.back(), ts.times[path.r]});
    }
  }
  const auto predictions = predict_segments(ts, requests, threads);

  CvFunction out;
  out.metric = metric;
  out.terms.reserve(paths.size());
  std::size_t q = 0;
  for (const auto& path : paths) {
    const double target = ts.values[path.r];
    StepFunction term;
    term.cuts = path.envelope.cuts;
    for (std::size_t piece = 0; piece < path.solutions.size(); ++piece, ++q) {
      const double err = predictions[q] - target;
      term.values.push_back(metric == CvMetric::squared ? err * err : std::abs(err));
    }
    out.terms.push_back(coalesce(std::move(term)));
  }
  out.cv = merge_step_functions(out.terms);
  return out;
}

std::vector<double> representatives(const StepFunction& cv) {
  std::vector<double> reps;
  reps.reserve(cv.values.size());
  double lo = 0.0;
  for (double cut : cv.cuts) {
    reps.push_back(0.5 * (lo + cut));
    lo = cut;
  }
  reps.push_back(cv.cuts.empty() ? 1.0 : 2.0 * cv.cuts.back());
  return reps;
}

CvResult select(const StepFunction& cv, const std::function<double(double)>& se) {
  CvResult out;
  out.representatives = representatives(cv);
  std::size_t best = 0;
  for (std::size_t k = 1; k < cv.values.size(); ++k) {
    if (cv.values[k] <= cv.values[best]) best = k;
  }
  out.gamma_cv = out.representatives[best];
  out.cv_at_cv = cv.values[best];
  out.se_at_cv = se(out.gamma_cv);
  const double threshold = out.cv_at_cv + out.se_at_cv;
  std::size_t ose = best;
  for (std::size_t k = best; k < cv.values.size(); ++k) {
    if (cv.values[k] <= threshold) ose = k;
  }
  out.gamma_ose = out.representatives[ose];
  return out;
}

double standard_error(std::span<const StepFunction> terms, double gamma) {
  const std::size_t count = terms.size();
  if (count < 2) return 0.0;
  double mean = 0.0;
  for (const auto& t : terms) mean += t(gamma);
  mean /= static_cast<double>(count);
  double ss = 0.0;
  for (const auto& t : terms) {
    const double d = t(gamma) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(count - 1));
  return sd / std::sqrt(static_cast<double>(count));
}

CvResult select(const CvFunction& cv) {
  return select(cv.cv, [&](double gamma) { return standard_error(cv.terms, gamma); });
}

}  // namespace dofppr
