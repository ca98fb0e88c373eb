#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dofppr/polyfit.hpp"

namespace dofppr {

/// Limits on the degrees of freedom of a model.
struct DofCaps {
  /// Per-segment ceiling.
  int local_max = default_local_dof_cap;
  /// Restrict segments with at least two samples to |I| - 1 dofs, i.e. never
  /// interpolate a segment. Does not change any Bellman value.
  bool exclude_interpolation = true;
  /// Optional ceiling on the summed dofs.
  std::optional<int> total;

  /// Largest dof allowed on a segment of `length` samples.
  int segment_cap(std::size_t length) const noexcept {
    const auto len = static_cast<long long>(length);
    long long cap = exclude_interpolation ? std::max(1LL, len - 1) : len;
    return static_cast<int>(std::min<long long>(cap, local_max));
  }
};

/// A partition of [0, r) into consecutive segments with one dof count each.
struct DofPartition {
  std::vector<Segment> segments;
  std::vector<int> dofs;

  int total_dof() const noexcept;
  friend bool operator==(const DofPartition&, const DofPartition&) = default;
};

/// Bellman values B(r, nu): the least summed residual over partitions of the
/// first r samples with exactly nu dofs, plus the minimizing cut per entry.
class BellmanTable {
 public:
  struct Cut {
    std::uint32_t left = 0;  // samples [0, left) come before the last segment
    std::uint8_t dof = 0;    // dofs spent on [left, r)
  };

  BellmanTable(std::size_t n, int max_total, DofCaps caps);

  std::size_t size() const noexcept { return n_; }
  int max_total() const noexcept { return max_total_; }
  const DofCaps& caps() const noexcept { return caps_; }

  bool feasible(std::size_t r, int nu) const noexcept {
    return r >= 1 && r <= n_ && nu >= 1 && nu <= max_total_ &&
           static_cast<std::size_t>(nu) <= r;
  }
  /// Largest feasible dof budget for the prefix of length r.
  int max_feasible(std::size_t r) const noexcept {
    return static_cast<int>(std::min<std::size_t>(r, static_cast<std::size_t>(max_total_)));
  }
  double value(std::size_t r, int nu) const { return b_[idx(r, nu)]; }
  Cut cut(std::size_t r, int nu) const { return cuts_[idx(r, nu)]; }

 private:
  friend BellmanTable fill_bellman(const ResidualTable&, const DofCaps&);

  std::size_t idx(std::size_t r, int nu) const noexcept {
    return r * static_cast<std::size_t>(max_total_ + 1) + static_cast<std::size_t>(nu);
  }

  std::size_t n_;
  int max_total_;
  DofCaps caps_;
  std::vector<double> b_;
  std::vector<Cut> cuts_;
};

/// Fills the table by the recursion
///   B(r, nu) = min over l in [0, r), p in [1, nu] of B(l, nu - p) + d(l, r, p)
/// with B(0, 0) = 0 as the only boundary. Candidates are scanned with l
/// ascending, then p ascending, and only a strict improvement replaces the
/// incumbent, so each cut stores the smallest minimizing l.
BellmanTable fill_bellman(const ResidualTable& residuals, const DofCaps& caps);

/// Follows the cut graph from (r, nu). Throws Infeasible for infeasible pairs.
DofPartition backtrack(const BellmanTable& table, std::size_t r, int nu);

/// Summed residual of the partition, read from the table.
double partition_cost(const ResidualTable& residuals, const DofPartition& partition);

}  // namespace dofppr
