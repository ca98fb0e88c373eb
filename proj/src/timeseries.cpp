#include "dofppr/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dofppr/error.hpp"

namespace dofppr {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::invalid_sample: return "InvalidSample";
    case ErrorCode::index_error: return "IndexError";
    case ErrorCode::infeasible_fit: return "InfeasibleFit";
    case ErrorCode::infeasible: return "Infeasible";
    case ErrorCode::duplicate_slope: return "DuplicateSlope";
    case ErrorCode::invalid_penalty: return "InvalidPenalty";
    case ErrorCode::not_enough_data: return "NotEnoughData";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::io_error: return "IOError";
  }
  return "Unknown";
}

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values,
                       std::vector<double> weights)
    : times_(std::move(times)),
      values_(std::move(values)),
      weights_(std::move(weights)) {
  if (times_.empty()) throw Error(ErrorCode::empty_input, "time series is empty");
  if (values_.size() != times_.size() || weights_.size() != times_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "times, values and weights must have equal length");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i]) ||
        !std::isfinite(weights_[i]) || !(weights_[i] > 0)) {
      throw Error(ErrorCode::invalid_sample,
                  "non-finite sample or non-positive weight at index " +
                      std::to_string(i));
    }
    if (i > 0 && !(times_[i - 1] < times_[i])) {
      throw Error(ErrorCode::invalid_argument,
                  "times must be strictly increasing (index " +
                      std::to_string(i) + ")");
    }
  }
}

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values)
    : TimeSeries(times, std::move(values),
                 std::vector<double>(times.size(), 1.0)) {}

Prefix::Prefix(const TimeSeries& base, std::size_t r) : base_(&base), r_(r) {
  if (r < 1 || r > base.size()) {
    throw Error(ErrorCode::index_error,
                "prefix length " + std::to_string(r) + " outside 1.." +
                    std::to_string(base.size()));
  }
}

Prefix prefix(const TimeSeries& ts, std::size_t r) { return Prefix(ts, r); }

TimeSeries ingest(std::span<const Record> records) {
  if (records.empty()) throw Error(ErrorCode::empty_input, "no records");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const double w = rec.w.value_or(1.0);
    if (!std::isfinite(rec.t) || !std::isfinite(rec.y) || !std::isfinite(w) ||
        !(w > 0)) {
      throw Error(ErrorCode::invalid_sample,
                  "invalid record " + std::to_string(i));
    }
  }

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].t < records[b].t;
  });

  std::vector<double> times, values, weights;
  times.reserve(records.size());
  values.reserve(records.size());
  weights.reserve(records.size());
  for (std::size_t k = 0; k < order.size();) {
    const double t = records[order[k]].t;
    double wsum = 0.0;
    double wysum = 0.0;
    std::size_t count = 0;
    for (; k < order.size() && records[order[k]].t == t; ++k, ++count) {
      const auto& rec = records[order[k]];
      const double w = rec.w.value_or(1.0);
      wsum += w;
      wysum += w * rec.y;
    }
    times.push_back(t);
    // A lone record keeps its value bit-for-bit so ingest stays idempotent.
    values.push_back(count == 1 ? records[order[k - 1]].y : wysum / wsum);
    weights.push_back(wsum);
  }
  return TimeSeries(std::move(times), std::move(values), std::move(weights));
}

}  // namespace dofppr
