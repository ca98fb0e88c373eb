#include "dofppr/fit.hpp"

#include <cmath>

#include "dofppr/error.hpp"

namespace dofppr {

void FitOptions::validate() const {
  if (caps.local_max < 1 || caps.local_max > 255) {
    throw Error(ErrorCode::invalid_argument, "local dof cap must be in 1..255");
  }
  if (caps.total && *caps.total < 1) {
    throw Error(ErrorCode::invalid_argument, "total dof cap must be >= 1");
  }
  if (gamma && (!(*gamma >= 0.0) || !std::isfinite(*gamma))) {
    throw Error(ErrorCode::invalid_penalty, "penalty must be finite and >= 0");
  }
}

Solver solve_tables(SeriesView ts, const DofCaps& caps, unsigned threads) {
  auto residuals = all_residuals(ts, caps.local_max, threads);
  auto table = fill_bellman(residuals, caps);
  return {std::move(residuals), std::move(table)};
}

FitResult fit(const TimeSeries& ts, const FitOptions& options) {
  options.validate();
  const Solver solver = solve_tables(ts.view(), options.caps, options.threads);
  const std::size_t n = ts.size();

  FitResult out;
  out.n = n;
  out.options = options;
  out.path = path_for_prefix(solver.table, n);

  if (options.gamma) {
    out.gamma = *options.gamma;
  } else if (n < 2) {
    out.gamma = 1.0;
  } else {
    std::vector<RegularizationPath> paths;
    paths.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) paths.push_back(path_for_prefix(solver.table, r));
    out.cv = cv_function(paths, ts.view(), options.metric, options.threads);
    out.selection = select(*out.cv);
    out.gamma = options.selection == Selection::cv ? out.selection->gamma_cv
                                                   : out.selection->gamma_ose;
  }
  out.solution = solve_fixed_gamma(out.path, out.gamma);
  out.model = materialize(ts.view(), out.solution.partition);
  return out;
}

}  // namespace dofppr
