#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dofppr/timeseries.hpp"

namespace dofppr {

/// h(x) = 4 sin(4 pi x) - sgn(x - 0.3) - sgn(0.72 - x), sgn(0) = 0.
double heavisine(double x);

/// Seven-piece polynomial on [0, 1] with six jumps, coefficients rounded to
/// three decimals.
double fixture_poly(double x);

/// Piecewise polynomial on [0, 1]; piece k uses monomial coefficients in x.
struct PiecewisePolySpec {
  std::vector<double> breaks;
  std::vector<std::vector<double>> pieces;
  double sigma = 0.0;
  std::size_t n = 100;
  std::uint64_t seed = 0;

  void validate() const;
  double operator()(double x) const;
};

/// The fixture polynomial as a spec.
PiecewisePolySpec fixture_spec();

/// Constant, linear and quadratic pieces with jumps at 0.3 and 0.65.
PiecewisePolySpec three_piece_spec();

/// Random piecewise polynomial: `pieces` pieces with uniformly drawn breaks
/// and degrees up to max_degree.
PiecewisePolySpec random_spec(std::uint64_t seed, int pieces, int max_degree);

/// Sample generator: std::mt19937_64 seeded with `seed`; uniforms take the top
/// 53 bits of a draw, normals come from the Box-Muller transform. The output
/// is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// n sorted uniform sites on [0, 1] with values f(t) + N(0, sigma^2).
TimeSeries sample_signal(const std::function<double(double)>& f, std::size_t n,
                         double sigma, std::uint64_t seed);

TimeSeries sample(const PiecewisePolySpec& spec);
TimeSeries sample_heavisine(std::size_t n, double sigma, std::uint64_t seed);

}  // namespace dofppr
