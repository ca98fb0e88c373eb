#include "dofppr/dpcore.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "dofppr/error.hpp"

namespace dofppr {

int DofPartition::total_dof() const noexcept {
  return std::accumulate(dofs.begin(), dofs.end(), 0);
}

BellmanTable::BellmanTable(std::size_t n, int max_total, DofCaps caps)
    : n_(n),
      max_total_(max_total),
      caps_(caps),
      b_((n + 1) * static_cast<std::size_t>(max_total + 1),
         std::numeric_limits<double>::infinity()),
      cuts_((n + 1) * static_cast<std::size_t>(max_total + 1)) {}

BellmanTable fill_bellman(const ResidualTable& residuals, const DofCaps& caps) {
  const std::size_t n = residuals.size();
  if (caps.local_max < 1) {
    throw Error(ErrorCode::invalid_argument, "local dof cap must be >= 1");
  }
  if (caps.local_max > residuals.max_dof()) {
    throw Error(ErrorCode::invalid_argument,
                "residual table covers fewer dofs than the local cap");
  }
  if (caps.local_max > 255) {
    throw Error(ErrorCode::invalid_argument, "local dof cap must be <= 255");
  }
  if (caps.total && *caps.total < 1) {
    throw Error(ErrorCode::invalid_argument, "total dof cap must be >= 1");
  }
  const int max_total = static_cast<int>(
      std::min<std::size_t>(n, caps.total ? static_cast<std::size_t>(*caps.total) : n));

  BellmanTable table(n, max_total, caps);
  table.b_[table.idx(0, 0)] = 0.0;

  const auto m = static_cast<std::size_t>(caps.local_max);
  // d(l, r, p) for all l < r, gathered per r so the inner loops are contiguous.
  std::vector<double> column(n * m);
  std::vector<int> seg_cap(n + 1);
  for (std::size_t len = 1; len <= n; ++len) seg_cap[len] = caps.segment_cap(len);

  // Per r the scan runs l, then p, then nu. Every nu still sees candidates in
  // (l, p) lexicographic order with strict improvement, and row l stays hot.
  std::vector<double> best(static_cast<std::size_t>(max_total) + 1);
  std::vector<BellmanTable::Cut> arg(best.size());
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t l = 0; l < r; ++l) {
      const auto row = residuals.row(l, r);
      std::copy_n(row.begin(), m, column.begin() + static_cast<std::ptrdiff_t>(l * m));
    }
    const int nu_hi = table.max_feasible(r);
    for (int nu = 1; nu <= nu_hi; ++nu) {
      best[nu] = std::numeric_limits<double>::infinity();
      arg[nu] = {};
      if (nu <= seg_cap[r]) {
        best[nu] = column[static_cast<std::size_t>(nu - 1)];
        arg[nu] = {0, static_cast<std::uint8_t>(nu)};
      }
    }
    for (std::size_t l = 1; l < r; ++l) {
      // B(l, nu - p) is feasible iff 1 <= nu - p <= l.
      const int left_hi = table.max_feasible(l);
      const int p_hi = std::min(seg_cap[r - l], nu_hi - 1);
      const double* left = &table.b_[table.idx(l, 0)];
      const double* d = &column[l * m];
      for (int p = 1; p <= p_hi; ++p) {
        const double dp = d[p - 1];
        const int hi = std::min(nu_hi, left_hi + p);
        const BellmanTable::Cut here{static_cast<std::uint32_t>(l), static_cast<std::uint8_t>(p)};
        for (int nu = p + 1; nu <= hi; ++nu) {
          const double cand = left[nu - p] + dp;
          if (cand < best[nu]) {
            best[nu] = cand;
            arg[nu] = here;
          }
        }
      }
    }
    for (int nu = 1; nu <= nu_hi; ++nu) {
      table.b_[table.idx(r, nu)] = best[nu];
      table.cuts_[table.idx(r, nu)] = arg[nu];
    }
  }
  return table;
}

DofPartition backtrack(const BellmanTable& table, std::size_t r, int nu) {
  if (!table.feasible(r, nu)) {
    throw Error(ErrorCode::infeasible,
                "(r=" + std::to_string(r) + ", nu=" + std::to_string(nu) +
                    ") is not feasible");
  }
  DofPartition out;
  while (true) {
    const auto cut = table.cut(r, nu);
    out.segments.push_back({cut.left, r});
    out.dofs.push_back(cut.dof);
    if (cut.left == 0) break;
    r = cut.left;
    nu -= cut.dof;
  }
  std::reverse(out.segments.begin(), out.segments.end());
  std::reverse(out.dofs.begin(), out.dofs.end());
  return out;
}

double partition_cost(const ResidualTable& residuals, const DofPartition& partition) {
  double cost = 0.0;
  for (std::size_t k = 0; k < partition.segments.size(); ++k) {
    const auto& seg = partition.segments[k];
    cost += residuals(seg.begin, seg.end, partition.dofs[k]);
  }
  return cost;
}

}  // namespace dofppr
