#include "plinar/normal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace plinar {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
// Below this z, erfc(-z/sqrt 2) leaves the normal double range.
constexpr double kAsymptoticSwitch = -37.0;

// log Phi(z) for z << 0 from the Mills-ratio series
// Phi(z) ~ phi(z)/|z| * (1 - 1/z^2 + 3/z^4 - 15/z^6 + ...).
double log_cdf_asymptotic(double z) {
  const double z2 = z * z;
  const double inv = 1.0 / z2;
  double term = 1.0;
  double series = 1.0;
  for (int n = 1; n <= 8; ++n) {
    term *= -(2.0 * n - 1.0) * inv;
    series += term;
  }
  return -0.5 * z2 - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) +
         std::log(series);
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double log_normal_cdf(double z) {
  if (std::isnan(z)) return z;
  if (z < kAsymptoticSwitch) return log_cdf_asymptotic(z);
  if (z > 5.0) return std::log1p(-normal_sf(z));
  return std::log(normal_cdf(z));
}

double log_normal_sf(double z) { return log_normal_cdf(-z); }

double log_normal_interval(double lo, double hi) {
  if (!(lo < hi)) return -std::numeric_limits<double>::infinity();
  if (hi <= 0.0) {
    const double a = log_normal_cdf(hi);
    const double b = log_normal_cdf(lo);
    return a + std::log1p(-std::exp(b - a));
  }
  if (lo >= 0.0) {
    const double a = log_normal_sf(lo);
    const double b = log_normal_sf(hi);
    return a + std::log1p(-std::exp(b - a));
  }
  // Interval straddles zero: both tails are at most 1/2, the mass is not small.
  return std::log1p(-(normal_cdf(lo) + normal_sf(hi)));
}

}  // namespace plinar
