#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dofppr/affinemin.hpp"
#include "dofppr/regpath.hpp"
#include "dofppr/timeseries.hpp"

namespace dofppr {

enum class CvMetric { squared, absolute };

/// Rolling cross-validation score as a function of gamma. terms[r-1] scores
/// the prediction of sample r (0-based) from the prefix of length r.
struct CvFunction {
  StepFunction cv;
  std::vector<StepFunction> terms;
  CvMetric metric = CvMetric::squared;
};

/// paths[k] must be the path of the prefix of length k + 1, for all prefixes
/// shorter than the series. Only the rightmost segment of each solution is
/// fitted. Throws NotEnoughData for series with fewer than two samples.
CvFunction cv_function(std::span<const RegularizationPath> paths, SeriesView ts,
                       CvMetric metric, unsigned threads = 1);

struct CvResult {
  std::vector<double> representatives;
  double gamma_cv = 0.0;
  double gamma_ose = 0.0;
  double cv_at_cv = 0.0;
  double se_at_cv = 0.0;
};

/// One gamma per piece of the score: midpoints of bounded pieces, twice the
/// last cut for the unbounded piece (1 without cuts).
std::vector<double> representatives(const StepFunction& cv);

/// gamma_cv is the largest representative attaining the minimum score;
/// gamma_ose the largest representative scoring within se(gamma_cv) of it.
CvResult select(const StepFunction& cv, const std::function<double(double)>& se);

/// Standard error of the mean of the terms at gamma, from the sample
/// standard deviation (n-2 denominator over n-1 terms); zero for one term.
double standard_error(std::span<const StepFunction> terms, double gamma);

CvResult select(const CvFunction& cv);

}  // namespace dofppr
