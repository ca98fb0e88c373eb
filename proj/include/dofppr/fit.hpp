#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dofppr/dpcore.hpp"
#include "dofppr/modelselect.hpp"
#include "dofppr/polyfit.hpp"
#include "dofppr/regpath.hpp"
#include "dofppr/timeseries.hpp"

namespace dofppr {

enum class Selection { cv, ose };

struct FitOptions {
  DofCaps caps;
  /// Fixed penalty; skips cross-validation when set.
  std::optional<double> gamma;
  Selection selection = Selection::ose;
  CvMetric metric = CvMetric::squared;
  unsigned threads = 1;

  void validate() const;
};

/// Tables shared by the fit and path commands.
struct Solver {
  ResidualTable residuals;
  BellmanTable table;
};

Solver solve_tables(SeriesView ts, const DofCaps& caps, unsigned threads = 1);

struct FitResult {
  std::size_t n = 0;
  FitOptions options;
  std::optional<CvFunction> cv;
  std::optional<CvResult> selection;
  double gamma = 0.0;
  RegularizationPath path;
  FixedGammaSolution solution;
  PiecewisePolyModel model;
};

/// Full pipeline: residuals, Bellman table, path on the full data, rolling CV
/// over all proper prefixes (unless a penalty is fixed), selection, and the
/// continuous model at the selected penalty. A single sample needs no
/// selection: every penalty yields the same constant model, and gamma is
/// reported as 1.
FitResult fit(const TimeSeries& ts, const FitOptions& options);

}  // namespace dofppr
