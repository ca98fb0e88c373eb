#include "dofppr/affinemin.hpp"

#include <algorithm>
#include <string>

#include "dofppr/error.hpp"

namespace dofppr {

namespace {

std::size_t piece_index(const std::vector<double>& cuts, double gamma) {
  return static_cast<std::size_t>(
      std::upper_bound(cuts.begin(), cuts.end(), gamma) - cuts.begin());
}

}  // namespace

std::size_t LowerEnvelope::piece_at(double gamma) const {
  return piece_index(cuts, gamma);
}

double LowerEnvelope::value(double gamma) const {
  const auto& f = pieces[piece_at(gamma)];
  return f.intercept + f.slope * gamma;
}

LowerEnvelope lower_envelope(std::span<const AffineFn> fns) {
  if (fns.empty()) throw Error(ErrorCode::invalid_argument, "empty affine family");
  for (std::size_t k = 1; k < fns.size(); ++k) {
    if (fns[k].slope == fns[k - 1].slope) {
      throw Error(ErrorCode::duplicate_slope,
                  "duplicate slope " + std::to_string(fns[k].slope));
    }
    if (fns[k].slope > fns[k - 1].slope) {
      throw Error(ErrorCode::invalid_argument,
                  "affine family must be sorted by decreasing slope");
    }
  }

  // starts[k] is where pieces[k] becomes minimal; starts[0] = 0.
  std::vector<AffineFn> pieces;
  std::vector<double> starts;
  pieces.push_back(fns[0]);
  starts.push_back(0.0);
  for (std::size_t k = 1; k < fns.size(); ++k) {
    const AffineFn& f = fns[k];
    double xi = 0.0;
    while (!pieces.empty()) {
      const AffineFn& top = pieces.back();
      xi = (f.intercept - top.intercept) / static_cast<double>(top.slope - f.slope);
      // f has the smaller slope, so it wins right of xi; a piece that would
      // only survive on an empty interval is dropped.
      if (xi > starts.back()) break;
      pieces.pop_back();
      starts.pop_back();
    }
    if (pieces.empty()) {
      pieces.push_back(f);
      starts.push_back(0.0);
    } else {
      pieces.push_back(f);
      starts.push_back(xi);
    }
  }

  LowerEnvelope env;
  env.pieces = std::move(pieces);
  env.cuts.assign(starts.begin() + 1, starts.end());
  return env;
}

std::size_t StepFunction::piece_at(double gamma) const {
  return piece_index(cuts, gamma);
}

double StepFunction::operator()(double gamma) const { return values[piece_at(gamma)]; }

StepFunction coalesce(StepFunction f) {
  StepFunction out;
  out.values.push_back(f.values.front());
  for (std::size_t k = 0; k < f.cuts.size(); ++k) {
    if (f.values[k + 1] == out.values.back()) continue;
    out.cuts.push_back(f.cuts[k]);
    out.values.push_back(f.values[k + 1]);
  }
  return out;
}

StepFunction merge_step_functions(std::span<const StepFunction> fs) {
  if (fs.empty()) throw Error(ErrorCode::invalid_argument, "nothing to merge");
  std::vector<double> cuts;
  for (const auto& f : fs) {
    if (f.values.size() != f.cuts.size() + 1) {
      throw Error(ErrorCode::invalid_argument, "step function needs |cuts|+1 values");
    }
    cuts.insert(cuts.end(), f.cuts.begin(), f.cuts.end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto count = static_cast<double>(fs.size());
  StepFunction out;
  out.cuts = cuts;
  out.values.reserve(cuts.size() + 1);
  std::vector<std::size_t> cursor(fs.size(), 0);
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    // Interval k starts at cuts[k-1]; advance each input past that point.
    double sum = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const auto& f = fs[i];
      if (k > 0) {
        while (cursor[i] < f.cuts.size() && f.cuts[cursor[i]] <= cuts[k - 1]) ++cursor[i];
      }
      sum += f.values[cursor[i]];
    }
    out.values.push_back(sum / count);
  }
  return coalesce(std::move(out));
}

}  // namespace dofppr
