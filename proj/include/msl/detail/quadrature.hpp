#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace msl {

namespace detail {
constexpr unsigned kGaussOrder = 20;
// Sub-cell length is chosen so that rate * length <= this bound; for entire
// integrands of that size the 20-point rule is exact to rounding.
constexpr double kRateLengthBound = 2.0;
constexpr long kMaxSubcells = 1L << 16;
}  // namespace detail

// Accumulates into `total`, which fixes the result shape (needed for Eigen vectors).
template <class F, class R>
R smooth_integral_into(const F& f, double lo, double hi, double rate, R total) {
  using Rule = boost::math::quadrature::gauss<double, detail::kGaussOrder>;
  if (!(hi > lo)) return total;
  const double len = hi - lo;
  long pieces = 1;
  if (std::isfinite(rate) && rate > 0.0) {
    pieces = std::clamp<long>(static_cast<long>(std::ceil(rate * len / detail::kRateLengthBound)), 1,
                              detail::kMaxSubcells);
  }
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();
  const double h = len / static_cast<double>(pieces);
  const double half = 0.5 * h;
  for (long k = 0; k < pieces; ++k) {
    const double mid = lo + h * static_cast<double>(k) + half;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double w = half * weights[i];
      if (nodes[i] == 0.0) {
        total += w * f(mid);
      } else {
        total += w * f(mid - half * nodes[i]);
        total += w * f(mid + half * nodes[i]);
      }
    }
  }
  return total;
}

template <class F>
auto smooth_integral(const F& f, double lo, double hi, double rate) -> decltype(f(lo)) {
  return smooth_integral_into(f, lo, hi, rate, decltype(f(lo)){});
}

}  // namespace msl
