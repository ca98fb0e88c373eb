#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dofppr/affinemin.hpp"
#include "dofppr/datagen.hpp"
#include "dofppr/fit.hpp"

namespace dofppr {

// Index ranges in reports are 1-based and inclusive.

struct SegmentReport {
  std::size_t first = 0;
  std::size_t last = 0;
  int dof = 0;
  double t_first = 0.0;
  double t_last = 0.0;
  std::vector<double> newton_centers;
  std::vector<double> newton_coeffs;
  /// Powers of (t - t_first).
  std::vector<double> monomial_coeffs;

  friend bool operator==(const SegmentReport&, const SegmentReport&) = default;
};

struct ChangepointReport {
  std::size_t last_index_left = 0;
  double break_value = 0.0;

  friend bool operator==(const ChangepointReport&, const ChangepointReport&) = default;
};

/// One constant stretch of the regularization path; gamma_hi is unset for
/// the unbounded last interval.
struct PathInterval {
  double gamma_lo = 0.0;
  std::optional<double> gamma_hi;
  int nu = 0;
  double residual = 0.0;
  std::vector<std::size_t> changepoints;
  std::vector<int> dofs;

  friend bool operator==(const PathInterval&, const PathInterval&) = default;
};

struct CapsReport {
  int nu_max_local = 0;
  std::optional<int> nu_total;
  bool exclude_interpolation = true;

  friend bool operator==(const CapsReport&, const CapsReport&) = default;
};

struct FitReport {
  std::size_t n = 0;
  CapsReport caps;
  std::string selection;  // "ose", "cv" or "fixed"
  std::string cv_metric;  // "l2" or "l1"
  double gamma = 0.0;
  std::optional<double> gamma_cv;
  std::optional<double> gamma_ose;
  std::optional<double> se_at_cv;
  int total_dof = 0;
  double residual = 0.0;
  double energy = 0.0;
  std::vector<SegmentReport> segments;
  std::vector<double> breaks;
  std::vector<ChangepointReport> changepoints;
  std::optional<StepFunction> cv;
  std::vector<PathInterval> path;

  friend bool operator==(const FitReport&, const FitReport&) = default;
};

struct PathReport {
  std::size_t n = 0;
  CapsReport caps;
  std::vector<PathInterval> path;
  /// B(n, nu) for nu = 1..max feasible.
  std::vector<double> bellman;

  friend bool operator==(const PathReport&, const PathReport&) = default;
};

std::vector<PathInterval> describe_path(const RegularizationPath& path);

FitReport make_fit_report(const TimeSeries& ts, const FitResult& result);
PathReport make_path_report(const TimeSeries& ts, const DofCaps& caps, unsigned threads = 1);

/// Pretty JSON; doubles are written so that they parse back bit-identically.
std::string to_json(const FitReport& report);
std::string to_json(const PathReport& report);
FitReport fit_report_from_json(const std::string& text);
PathReport path_report_from_json(const std::string& text);

/// One row per segment: first,last,dof,t_first,t_last,break_right.
std::string to_csv(const FitReport& report);

std::string to_json(const PiecewisePolySpec& spec);
PiecewisePolySpec spec_from_json(const std::string& text);

/// t,y[,w] rows with 17 significant digits; w only when some weight is not 1.
std::string series_to_csv(const TimeSeries& ts);

}  // namespace dofppr
