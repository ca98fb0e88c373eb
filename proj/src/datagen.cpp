#include "dofppr/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dofppr/error.hpp"

namespace dofppr {

namespace {

double sgn(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

double horner(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

struct FixturePiece {
  double lo;
  std::vector<double> coeffs;
};

const std::vector<FixturePiece>& fixture_pieces() {
  static const std::vector<FixturePiece> pieces = {
      {0.0, {0.0, 10.88}},
      {0.092, {-3.688, 128.812, -1299.917, 5707.356, -9229.693}},
      {0.262, {0.37}},
      {0.298, {-3.881, 33.877, -95.406, 87.499}},
      {0.6, {-88.748, 267.536, -199.38}},
      {0.729, {1523.272, -6132.631, 8230.53, -3679.993}},
      {0.814, {5.383, -5.383}},
  };
  return pieces;
}

}  // namespace

double heavisine(double x) {
  return 4.0 * std::sin(4.0 * std::numbers::pi * x) - sgn(x - 0.3) - sgn(0.72 - x);
}

double fixture_poly(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "fixture polynomial is defined on [0, 1]");
  }
  const auto& pieces = fixture_pieces();
  std::size_t k = pieces.size() - 1;
  while (k > 0 && x < pieces[k].lo) --k;
  return horner(pieces[k].coeffs, x);
}

void PiecewisePolySpec::validate() const {
  if (pieces.size() != breaks.size() + 1) {
    throw Error(ErrorCode::invalid_argument, "need exactly one more piece than breaks");
  }
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    if (!(breaks[k] > 0.0 && breaks[k] < 1.0) || (k > 0 && !(breaks[k - 1] < breaks[k]))) {
      throw Error(ErrorCode::invalid_argument, "breaks must be ascending within (0, 1)");
    }
  }
  for (const auto& p : pieces) {
    if (p.empty()) throw Error(ErrorCode::invalid_argument, "empty coefficient list");
    for (double c : p) {
      if (!std::isfinite(c)) throw Error(ErrorCode::invalid_argument, "non-finite coefficient");
    }
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::invalid_argument, "sigma must be finite and >= 0");
  }
  if (n < 1) throw Error(ErrorCode::invalid_argument, "need at least one sample");
}

double PiecewisePolySpec::operator()(double x) const {
  const auto k = static_cast<std::size_t>(
      std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
  return horner(pieces[k], x);
}

PiecewisePolySpec fixture_spec() {
  PiecewisePolySpec spec;
  for (const auto& piece : fixture_pieces()) {
    if (piece.lo > 0.0) spec.breaks.push_back(piece.lo);
    spec.pieces.push_back(piece.coeffs);
  }
  spec.n = 150;
  spec.sigma = 0.05;
  return spec;
}

PiecewisePolySpec three_piece_spec() {
  PiecewisePolySpec spec;
  spec.breaks = {0.3, 0.65};
  spec.pieces = {
      {0.2},
      {0.36, 0.8},             // 0.6 + 0.8 (x - 0.3)
      {2.86, -6.4, 4.0},       // 0.3 + 4 (x - 0.8)^2
  };
  spec.n = 100;
  spec.sigma = 0.01;
  return spec;
}

PiecewisePolySpec random_spec(std::uint64_t seed, int pieces, int max_degree) {
  if (pieces < 1 || max_degree < 0) {
    throw Error(ErrorCode::invalid_argument, "need pieces >= 1 and max_degree >= 0");
  }
  Rng rng(seed);
  PiecewisePolySpec spec;
  spec.seed = seed;
  const double min_gap = 0.5 / pieces;
  while (true) {
    spec.breaks.clear();
    for (int k = 1; k < pieces; ++k) spec.breaks.push_back(rng.uniform());
    std::sort(spec.breaks.begin(), spec.breaks.end());
    bool ok = true;
    double prev = 0.0;
    for (double b : spec.breaks) {
      ok = ok && b - prev >= min_gap;
      prev = b;
    }
    if (ok && 1.0 - prev >= min_gap) break;
  }
  double lo = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double hi = k + 1 < pieces ? spec.breaks[static_cast<std::size_t>(k)] : 1.0;
    const int degree = static_cast<int>(rng.uniform() * (max_degree + 1));
    // sum_j c_j ((x - mid) / half)^j expanded into powers of x
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1, 0.0);
    std::vector<double> basis = {1.0};  // ((x - mid) / half)^j in powers of x
    for (int j = 0; j <= degree; ++j) {
      const double c = j == 0 ? 2.0 * rng.normal() : rng.normal();
      for (std::size_t i = 0; i < basis.size(); ++i) coeffs[i] += c * basis[i];
      std::vector<double> next(basis.size() + 1, 0.0);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i] / half;
        next[i] -= basis[i] * mid / half;
      }
      basis = std::move(next);
    }
    spec.pieces.push_back(std::move(coeffs));
    lo = hi;
  }
  return spec;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

TimeSeries sample_signal(const std::function<double(double)>& f, std::size_t n,
                         double sigma, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "need at least one sample");
  if (!(sigma >= 0.0)) throw Error(ErrorCode::invalid_argument, "sigma must be >= 0");
  Rng rng(seed);
  std::vector<double> sites(n);
  for (auto& t : sites) t = rng.uniform();
  std::sort(sites.begin(), sites.end());
  std::vector<Record> records;
  records.reserve(n);
  for (double t : sites) {
    const double noise = sigma > 0.0 ? sigma * rng.normal() : 0.0;
    records.push_back({t, f(t) + noise, std::nullopt});
  }
  return ingest(records);
}

TimeSeries sample(const PiecewisePolySpec& spec) {
  spec.validate();
  return sample_signal([&](double x) { return spec(x); }, spec.n, spec.sigma, spec.seed);
}

TimeSeries sample_heavisine(std::size_t n, double sigma, std::uint64_t seed) {
  return sample_signal(heavisine, n, sigma, seed);
}

}  // namespace dofppr
