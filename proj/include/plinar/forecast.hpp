#pragma once

#include <span>
#include <vector>

#include "plinar/process.hpp"

namespace plinar {

/// Mixture weights of the Z-step innovation law at horizon k.
struct ABCCoefficients {
  double a_k;
  double b_k;
  double c_k;
};

ABCCoefficients abc_coefficients(int k, const PLINARParams& params);

/// P(Z_{n+k} = z): the alpha^k atom at zero plus three geometric-type
/// components weighted by A_k, B_k, C_k.
double z_step_pmf(int z, int k, const PLINARParams& params);
/// P(Z_{n+k} > z) in closed form (every component is a geometric series).
double z_step_sf(int z, int k, const PLINARParams& params);

/// P(X_{n+k} = y | X_n = x_n): binomial survivors of x_n convolved with Z.
double conditional_pmf(int y, int k, int x_n, const PLINARParams& params);
/// The same law tabulated on y = 0..y_max.
std::vector<double> conditional_pmf_table(int y_max, int k, int x_n, const PLINARParams& params);
/// P(X_{n+k} > y | X_n = x_n).
double conditional_sf(int y, int k, int x_n, const PLINARParams& params);

double conditional_mean(int k, int x_n, const PLINARParams& params);
double conditional_variance(int k, int x_n, const PLINARParams& params);

/// Smallest Y with conditional mass on 0..Y of at least 1 - tail.
int conditional_truncation_point(int k, int x_n, const PLINARParams& params,
                                 double tail = kDefaultTail);

/// Horizon tag for the stationary (k -> infinity) law.
inline constexpr int kInfiniteHorizon = 0;

struct PointForecasts {
  int mean_rounded;
  int median;
  int mode;
};

struct ForecastDistribution {
  int horizon;  // kInfiniteHorizon for the stationary marginal
  int origin;
  std::vector<double> pmf;  // y = 0..Y*
  double mean;
  double variance;
  int median;
  int mode;
  double tail_mass;  // conditional mass beyond Y*

  PointForecasts point_forecasts() const;
};

ForecastDistribution forecast_distribution(int k, int x_n, const PLINARParams& params,
                                           double tail = kDefaultTail);
/// k = infinity: the PL(theta) marginal, whatever the origin.
ForecastDistribution stationary_distribution(const PLINARParams& params,
                                             double tail = kDefaultTail);

/// Nearest integer with halves rounded up, clamped to the count support.
int round_half_up(double value);
/// Smallest y with cumulative mass >= 1/2.
int median_of(std::span<const double> pmf);
/// Smallest maximizing y.
int mode_of(std::span<const double> pmf);

}  // namespace plinar
