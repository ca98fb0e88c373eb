#pragma once

#include <cstddef>
#include <vector>

#include "dofppr/affinemin.hpp"
#include "dofppr/dpcore.hpp"
#include "dofppr/polyfit.hpp"

namespace dofppr {

/// Optimal models of one prefix as a function of the penalty gamma. The
/// envelope runs over gamma -> B(r, nu) + gamma * nu; solutions[k] is the
/// backtracked partition of envelope piece k.
struct RegularizationPath {
  std::size_t r = 0;
  LowerEnvelope envelope;
  std::vector<DofPartition> solutions;

  int nu(std::size_t piece) const { return envelope.pieces[piece].slope; }
  double residual(std::size_t piece) const { return envelope.pieces[piece].intercept; }
};

RegularizationPath path_for_prefix(const BellmanTable& table, std::size_t r);

struct FixedGammaSolution {
  DofPartition partition;
  int nu = 0;
  double energy = 0.0;
};

/// Cut points resolve to the piece with fewer dofs. Throws InvalidPenalty for
/// negative or non-finite gamma.
FixedGammaSolution solve_fixed_gamma(const RegularizationPath& path, double gamma);

/// Continuous-domain model. Piece k owns [breaks[k-1], breaks[k]) except that
/// a sample time of a segment always maps to that segment's piece.
struct PiecewisePolyModel {
  std::vector<double> breaks;
  std::vector<SegmentFit> pieces;
  std::vector<double> first_times;
  std::vector<double> last_times;
};

/// Break between two fits on the gap [gap_lo, gap_hi] between their data:
/// the smallest root of the difference inside the open gap if there is one,
/// otherwise the point of least distance on the closed gap, otherwise (the
/// difference is constant) the midpoint.
double place_break(const SegmentFit& left, const SegmentFit& right, double gap_lo,
                   double gap_hi);

PiecewisePolyModel materialize(SeriesView ts, const DofPartition& partition);

double predict(const PiecewisePolyModel& model, double t);

}  // namespace dofppr
