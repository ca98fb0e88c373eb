#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dofppr {

/// gamma -> intercept + slope * gamma
struct AffineFn {
  double intercept;
  int slope;
};

/// Pointwise minimum of an affine family on gamma >= 0. Piece k is active on
/// [cuts[k-1], cuts[k]); at a cut the right piece (fewer dofs) is canonical.
struct LowerEnvelope {
  std::vector<double> cuts;
  std::vector<AffineFn> pieces;

  /// Index of the piece active at gamma >= 0.
  std::size_t piece_at(double gamma) const;
  double value(double gamma) const;
};

/// Linear-time stack scan over a family sorted by strictly decreasing slope.
/// Throws DuplicateSlope on repeated slopes and InvalidArgument on unsorted
/// or empty input.
LowerEnvelope lower_envelope(std::span<const AffineFn> fns);

/// Right-open piecewise-constant function on gamma >= 0.
struct StepFunction {
  std::vector<double> cuts;
  std::vector<double> values;  // values.size() == cuts.size() + 1

  double operator()(double gamma) const;
  std::size_t piece_at(double gamma) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;
};

/// Merges exactly equal neighbouring values.
StepFunction coalesce(StepFunction f);

/// Pointwise mean over the union of all cuts, summed in input order.
StepFunction merge_step_functions(std::span<const StepFunction> fs);

}  // namespace dofppr
