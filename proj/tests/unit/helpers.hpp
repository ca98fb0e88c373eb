#pragma once

#include <vector>

#include "dofppr/dpcore.hpp"
#include "dofppr/timeseries.hpp"

namespace testing {

inline dofppr::TimeSeries series(std::vector<double> t, std::vector<double> y) {
  return dofppr::TimeSeries(std::move(t), std::move(y));
}

// t = [0, 1, 2], y = [0, 1, 0]
inline dofppr::TimeSeries example1() { return series({0, 1, 2}, {0, 1, 0}); }

inline dofppr::DofCaps interpolating_caps(int local_max = dofppr::default_local_dof_cap) {
  dofppr::DofCaps caps;
  caps.local_max = local_max;
  caps.exclude_interpolation = false;
  return caps;
}

}  // namespace testing
