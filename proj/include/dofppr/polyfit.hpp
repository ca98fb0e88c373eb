#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dofppr/timeseries.hpp"

namespace dofppr {

/// Default ceiling on the dofs of a single segment (polynomial degree 10).
inline constexpr int default_local_dof_cap = 11;

/// Half-open index range [begin, end) into a series.
struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Least-squares polynomial on one segment, stored in the Newton basis
/// N^0 = 1, N^k(t) = (t - c_0)...(t - c_{k-1}) with centers c_k equal to the
/// first dof-1 sample times of the segment.
struct SegmentFit {
  Segment segment;
  int dof = 0;
  std::vector<double> centers;
  std::vector<double> coeffs;

  /// Coefficients of the same polynomial in powers of (t - origin).
  std::vector<double> monomial_coeffs(double origin) const;
};

double evaluate(const SegmentFit& fit, double t);

/// Givens-rotation QR of the weighted Newton-basis design matrix of the
/// segment [begin, begin + count) while samples are appended one at a time.
/// Holds only an upper-triangular max_dof x max_dof factor and the rotated
/// right-hand side.
class SegmentSweep {
 public:
  SegmentSweep(SeriesView ts, std::size_t begin, int max_dof);

  /// Appends sample begin + count().
  void push();
  std::size_t count() const noexcept { return count_; }
  std::size_t end() const noexcept { return begin_ + count_; }

  /// out[k] = residual of the (k+1)-dof fit, for k < out.size() <= max_dof.
  /// Entries with k+1 >= count() are exactly zero.
  void residuals(std::span<double> out) const;

  /// Least-squares fit with the given dofs; dof <= min(count(), max_dof).
  SegmentFit fit(int dof) const;

 private:
  SeriesView ts_;
  std::size_t begin_;
  int max_dof_;
  std::size_t count_ = 0;
  std::vector<double> r_;  // row-major upper triangle
  std::vector<double> qty_;
  double tail_ = 0.0;
  // Values are fitted relative to the first one, so constant data rotates
  // exact zeros.
  double shift_ = 0.0;
  std::vector<double> row_;
};

/// Residuals of all weighted least-squares polynomial fits on all segments
/// with up to max_dof dofs. Layout is contiguous per segment start.
class ResidualTable {
 public:
  ResidualTable(std::size_t n, int max_dof);

  std::size_t size() const noexcept { return n_; }
  int max_dof() const noexcept { return max_dof_; }

  /// Residual of the dof-dof fit on [begin, end); requires
  /// 1 <= dof <= max_dof(). Zero when dof >= end - begin.
  double operator()(std::size_t begin, std::size_t end, int dof) const {
    return data_[index(begin, end) + static_cast<std::size_t>(dof - 1)];
  }
  /// All max_dof() residuals of the segment [begin, end).
  std::span<const double> row(std::size_t begin, std::size_t end) const {
    return {data_.data() + index(begin, end),
            static_cast<std::size_t>(max_dof_)};
  }
  std::span<double> row(std::size_t begin, std::size_t end) {
    return {data_.data() + index(begin, end),
            static_cast<std::size_t>(max_dof_)};
  }

 private:
  std::size_t index(std::size_t begin, std::size_t end) const noexcept {
    const std::size_t start_offset = begin * n_ - begin * (begin - 1) / 2;
    return (start_offset + (end - begin - 1)) *
           static_cast<std::size_t>(max_dof_);
  }

  std::size_t n_;
  int max_dof_;
  std::vector<double> data_;
};

/// One sweep per segment start, O(n^2 max_dof^2) total. Sweeps are
/// distributed over `threads` workers; the result does not depend on it.
ResidualTable all_residuals(SeriesView ts, int max_dof, unsigned threads = 1);
inline ResidualTable all_residuals(const TimeSeries& ts, int max_dof,
                                   unsigned threads = 1) {
  return all_residuals(ts.view(), max_dof, threads);
}

/// Throws InfeasibleFit if dof exceeds the segment length.
SegmentFit fit_segment(SeriesView ts, Segment segment, int dof);

/// A request to extrapolate the fit of `segment` with `dof` dofs to `t`.
struct PredictionRequest {
  Segment segment;
  int dof;
  double t;
};

/// Evaluates many segment fits, sharing one sweep per segment start. Each
/// value equals evaluate(fit_segment(ts, segment, dof), t) bit for bit.
std::vector<double> predict_segments(SeriesView ts,
                                     std::span<const PredictionRequest> requests,
                                     unsigned threads = 1);

}  // namespace dofppr
