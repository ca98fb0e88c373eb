#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace dofppr {

struct Record {
  double t;
  double y;
  std::optional<double> w;
};

/// Read-only window over (times, values, weights) of equal length.
struct SeriesView {
  std::span<const double> times;
  std::span<const double> values;
  std::span<const double> weights;

  std::size_t size() const noexcept { return times.size(); }
  SeriesView first(std::size_t r) const {
    return {times.first(r), values.first(r), weights.first(r)};
  }
};

/// Samples with strictly increasing times and positive weights. Immutable
/// once constructed.
class TimeSeries {
 public:
  /// Validates the invariants; throws Error otherwise. Does not sort or merge,
  /// use ingest() for raw records.
  TimeSeries(std::vector<double> times, std::vector<double> values,
             std::vector<double> weights);
  TimeSeries(std::vector<double> times, std::vector<double> values);

  std::size_t size() const noexcept { return times_.size(); }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> weights() const noexcept { return weights_; }
  SeriesView view() const noexcept { return {times_, values_, weights_}; }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<double> weights_;
};

/// The series restricted to its first r samples. The base must outlive the
/// prefix.
class Prefix {
 public:
  Prefix(const TimeSeries& base, std::size_t r);

  std::size_t size() const noexcept { return r_; }
  const TimeSeries& base() const noexcept { return *base_; }
  SeriesView view() const { return base_->view().first(r_); }

 private:
  const TimeSeries* base_;
  std::size_t r_;
};

/// Sorts records by time and merges records with bitwise-equal times into a
/// single point: weights are summed and the value is the weighted mean.
/// Missing weights default to 1.
TimeSeries ingest(std::span<const Record> records);

/// r counts samples, 1 <= r <= ts.size().
Prefix prefix(const TimeSeries& ts, std::size_t r);

}  // namespace dofppr
