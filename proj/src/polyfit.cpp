#include "dofppr/polyfit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <thread>

#include "dofppr/error.hpp"

namespace dofppr {

namespace {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  // Strided assignment balances the triangular workload.
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += threads) fn(i);
    });
  }
}

}  // namespace

std::vector<double> SegmentFit::monomial_coeffs(double origin) const {
  // Nested multiplication: p = a_0 + (u - d_0)(a_1 + (u - d_1)(...)),
  // u = t - origin, d_k = c_k - origin.
  std::vector<double> poly;
  if (coeffs.empty()) return poly;
  poly.push_back(coeffs.back());
  for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k) {
    const double d = centers[static_cast<std::size_t>(k)] - origin;
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= d * poly[i];
    }
    next[0] += coeffs[static_cast<std::size_t>(k)];
    poly = std::move(next);
  }
  return poly;
}

double evaluate(const SegmentFit& fit, double t) {
  if (fit.coeffs.empty()) return 0.0;
  double acc = fit.coeffs.back();
  for (int k = static_cast<int>(fit.coeffs.size()) - 2; k >= 0; --k) {
    acc = fit.coeffs[static_cast<std::size_t>(k)] +
          (t - fit.centers[static_cast<std::size_t>(k)]) * acc;
  }
  return acc;
}

SegmentSweep::SegmentSweep(SeriesView ts, std::size_t begin, int max_dof)
    : ts_(ts),
      begin_(begin),
      max_dof_(max_dof),
      r_(static_cast<std::size_t>(max_dof) * static_cast<std::size_t>(max_dof), 0.0),
      qty_(static_cast<std::size_t>(max_dof), 0.0),
      row_(static_cast<std::size_t>(max_dof), 0.0) {
  if (max_dof < 1) throw Error(ErrorCode::invalid_argument, "max_dof must be >= 1");
  if (begin >= ts.size()) throw Error(ErrorCode::index_error, "segment start out of range");
  shift_ = ts.values[begin];
}

void SegmentSweep::push() {
  const std::size_t i = begin_ + count_;
  if (i >= ts_.size()) throw Error(ErrorCode::index_error, "sweep ran past the series end");
  const auto m = static_cast<std::size_t>(max_dof_);
  const double t = ts_.times[i];
  const double sw = std::sqrt(ts_.weights[i]);

  // Newton row: entries past the local index vanish at the centers.
  const std::size_t filled = std::min(count_ + 1, m);
  row_[0] = sw;
  for (std::size_t k = 1; k < filled; ++k) {
    row_[k] = row_[k - 1] * (t - ts_.times[begin_ + k - 1]);
  }
  std::fill(row_.begin() + static_cast<std::ptrdiff_t>(filled), row_.end(), 0.0);
  double rhs = sw * (ts_.values[i] - shift_);

  for (std::size_t j = 0; j < m; ++j) {
    const double a = row_[j];
    if (a == 0.0) continue;
    double* rj = &r_[j * m];
    if (rj[j] == 0.0) {
      // Empty row of R: the remaining sample is absorbed exactly.
      for (std::size_t k = j; k < m; ++k) rj[k] = row_[k];
      qty_[j] = rhs;
      rhs = 0.0;
      break;
    }
    const double h = std::hypot(rj[j], a);
    const double c = rj[j] / h;
    const double s = a / h;
    rj[j] = h;
    row_[j] = 0.0;
    for (std::size_t k = j + 1; k < m; ++k) {
      const double rk = rj[k];
      rj[k] = c * rk + s * row_[k];
      row_[k] = c * row_[k] - s * rk;
    }
    const double z = qty_[j];
    qty_[j] = c * z + s * rhs;
    rhs = c * rhs - s * z;
  }
  tail_ += rhs * rhs;
  ++count_;
}

void SegmentSweep::residuals(std::span<double> out) const {
  const auto m = static_cast<std::size_t>(max_dof_);
  const std::size_t k_max = std::min(out.size(), m);
  double acc = tail_;
  for (std::size_t j = m; j-- > k_max;) acc += qty_[j] * qty_[j];
  for (std::size_t k = k_max; k-- > 0;) {
    // residual of the (k+1)-dof fit drops the first k+1 rotated components
    out[k] = acc;
    acc += qty_[k] * qty_[k];
  }
  for (std::size_t k = 0; k < k_max; ++k) {
    if (k + 1 >= count_) out[k] = 0.0;
  }
}

SegmentFit SegmentSweep::fit(int dof) const {
  if (dof < 1 || dof > max_dof_ || static_cast<std::size_t>(dof) > count_) {
    throw Error(ErrorCode::infeasible_fit,
                std::to_string(dof) + " dofs on a segment of " +
                    std::to_string(count_) + " samples");
  }
  const auto m = static_cast<std::size_t>(max_dof_);
  const auto nu = static_cast<std::size_t>(dof);
  SegmentFit out;
  out.segment = {begin_, begin_ + count_};
  out.dof = dof;
  out.centers.assign(ts_.times.begin() + static_cast<std::ptrdiff_t>(begin_),
                     ts_.times.begin() + static_cast<std::ptrdiff_t>(begin_ + nu - 1));
  out.coeffs.assign(nu, 0.0);
  for (std::size_t j = nu; j-- > 0;) {
    double acc = qty_[j];
    for (std::size_t k = j + 1; k < nu; ++k) acc -= r_[j * m + k] * out.coeffs[k];
    out.coeffs[j] = acc / r_[j * m + j];
  }
  out.coeffs[0] += shift_;
  return out;
}

ResidualTable::ResidualTable(std::size_t n, int max_dof)
    : n_(n),
      max_dof_(max_dof),
      data_(n * (n + 1) / 2 * static_cast<std::size_t>(max_dof), 0.0) {}

ResidualTable all_residuals(SeriesView ts, int max_dof, unsigned threads) {
  if (max_dof < 1) throw Error(ErrorCode::invalid_argument, "max_dof must be >= 1");
  if (ts.size() == 0) throw Error(ErrorCode::empty_input, "time series is empty");
  const std::size_t n = ts.size();
  ResidualTable table(n, max_dof);
  parallel_for(n, threads, [&](std::size_t begin) {
    SegmentSweep sweep(ts, begin, max_dof);
    for (std::size_t end = begin + 1; end <= n; ++end) {
      sweep.push();
      sweep.residuals(table.row(begin, end));
    }
  });
  return table;
}

SegmentFit fit_segment(SeriesView ts, Segment segment, int dof) {
  if (segment.begin >= segment.end || segment.end > ts.size()) {
    throw Error(ErrorCode::index_error, "invalid segment");
  }
  if (dof < 1 || static_cast<std::size_t>(dof) > segment.size()) {
    throw Error(ErrorCode::infeasible_fit,
                std::to_string(dof) + " dofs on a segment of " +
                    std::to_string(segment.size()) + " samples");
  }
  SegmentSweep sweep(ts, segment.begin, dof);
  while (sweep.end() < segment.end) sweep.push();
  return sweep.fit(dof);
}

std::vector<double> predict_segments(SeriesView ts,
                                     std::span<const PredictionRequest> requests,
                                     unsigned threads) {
  for (const auto& q : requests) {
    if (q.segment.begin >= q.segment.end || q.segment.end > ts.size()) {
      throw Error(ErrorCode::index_error, "invalid segment");
    }
    if (q.dof < 1 || static_cast<std::size_t>(q.dof) > q.segment.size()) {
      throw Error(ErrorCode::infeasible_fit, "dof exceeds segment length");
    }
  }
  // Group request indices by segment start, ordered by segment end.
  std::map<std::size_t, std::vector<std::size_t>> by_start;
  for (std::size_t k = 0; k < requests.size(); ++k) {
    by_start[requests[k].segment.begin].push_back(k);
  }
  std::vector<std::vector<std::size_t>*> groups;
  groups.reserve(by_start.size());
  for (auto& [begin, ids] : by_start) {
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      return requests[a].segment.end < requests[b].segment.end;
    });
    groups.push_back(&ids);
  }

  std::vector<double> out(requests.size(), 0.0);
  parallel_for(groups.size(), threads, [&](std::size_t g) {
    const auto& ids = *groups[g];
    int max_dof = 1;
    for (std::size_t k : ids) max_dof = std::max(max_dof, requests[k].dof);
    SegmentSweep sweep(ts, requests[ids.front()].segment.begin, max_dof);
    for (std::size_t k : ids) {
      const auto& q = requests[k];
      while (sweep.end() < q.segment.end) sweep.push();
      out[k] = evaluate(sweep.fit(q.dof), q.t);
    }
  });
  return out;
}

}  // namespace dofppr
