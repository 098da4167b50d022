#include "plinar/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plinar/error.hpp"

namespace plinar {

namespace {

void check_horizon(int k) {
  if (k < 1) fail(ErrorCode::invalid_parameter, "horizon k must be >= 1, got " + std::to_string(k));
}

void check_count(int v, const char* what) {
  if (v < 0) fail(ErrorCode::invalid_parameter, std::string(what) + " must be >= 0");
}

// Everything the Z-step law needs at one (k, alpha, theta).
struct ZLaw {
  double ak;
  ABCCoefficients abc;
  double p;          // theta / (1 + theta)
  double log_r;      // log(1 / (1 + theta))
  double rho;        // (1 + theta) / (1 + theta + alpha^k)
  double s;          // alpha^k / (1 + theta + alpha^k)

  ZLaw(int k, const PLINARParams& params) {
    const double t = params.theta();
    ak = std::pow(params.alpha(), k);
    const double d = t * (1.0 - ak) + 1.0;
    const double one_minus = 1.0 - ak;
    abc.a_k = (t * t * one_minus * one_minus + t * (1.0 - ak * ak) + 2.0 * ak) / (d * d);
    abc.b_k = one_minus / d;
    abc.c_k = -ak / (d * d);
    p = t / (1.0 + t);
    log_r = -std::log1p(t);
    rho = (1.0 + t) / (1.0 + t + ak);
    s = ak / (1.0 + t + ak);
  }

  double pmf(int z) const {
    const double rz = std::exp(z * log_r);
    const double bracket = abc.a_k * p * rz + abc.b_k * (z + 1.0) * p * p * rz +
                           abc.c_k * rho * std::pow(s, z);
    double v = (1.0 - ak) * bracket;
    if (z == 0) v += ak;
    return v;
  }

  double sf(int z) const {
    if (z < 0) return 1.0;
    const double r = std::exp(log_r);
    const double r_next = std::exp((z + 1.0) * log_r);
    const double geometric = r_next / p;
    const double weighted = r_next * ((z + 2.0) / p + r / (p * p));
    const double fast = std::pow(s, z + 1.0) / (1.0 - s);
    const double v = (1.0 - ak) * (abc.a_k * p * geometric + abc.b_k * p * p * weighted +
                                   abc.c_k * rho * fast);
    return std::max(v, 0.0);
  }
};

// Binomial(x_n, alpha^k) weights for the surviving part of the origin.
std::vector<double> survivor_weights(int x_n, double ak) {
  std::vector<double> w(static_cast<std::size_t>(x_n) + 1, 0.0);
  if (ak == 0.0) {
    w[0] = 1.0;
    return w;
  }
  const double log_ak = std::log(ak);
  const double log_rest = std::log1p(-ak);
  const double lg_x = std::lgamma(x_n + 1.0);
  for (int j = 0; j <= x_n; ++j) {
    w[static_cast<std::size_t>(j)] =
        std::exp(lg_x - std::lgamma(j + 1.0) - std::lgamma(x_n - j + 1.0) + j * log_ak +
                 (x_n - j) * log_rest);
  }
  return w;
}

}  // namespace

ABCCoefficients abc_coefficients(int k, const PLINARParams& params) {
  check_horizon(k);
  return ZLaw(k, params).abc;
}

double z_step_pmf(int z, int k, const PLINARParams& params) {
  check_horizon(k);
  check_count(z, "z");
  return ZLaw(k, params).pmf(z);
}

double z_step_sf(int z, int k, const PLINARParams& params) {
  check_horizon(k);
  return ZLaw(k, params).sf(z);
}

double conditional_pmf(int y, int k, int x_n, const PLINARParams& params) {
  check_count(y, "y");
  check_count(x_n, "x_n");
  check_horizon(k);
  const ZLaw law(k, params);
  const auto w = survivor_weights(x_n, law.ak);
  double total = 0.0;
  for (int j = 0; j <= std::min(y, x_n); ++j) total += w[static_cast<std::size_t>(j)] * law.pmf(y - j);
  return total;
}

std::vector<double> conditional_pmf_table(int y_max, int k, int x_n, const PLINARParams& params) {
  check_count(y_max, "y_max");
  check_count(x_n, "x_n");
  check_horizon(k);
  const ZLaw law(k, params);
  const auto w = survivor_weights(x_n, law.ak);
  std::vector<double> z(static_cast<std::size_t>(y_max) + 1);
  for (int i = 0; i <= y_max; ++i) z[static_cast<std::size_t>(i)] = law.pmf(i);
  std::vector<double> out(z.size(), 0.0);
  for (int y = 0; y <= y_max; ++y) {
    double total = 0.0;
    for (int j = 0; j <= std::min(y, x_n); ++j) {
      total += w[static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(y - j)];
    }
    out[static_cast<std::size_t>(y)] = total;
  }
  return out;
}

double conditional_sf(int y, int k, int x_n, const PLINARParams& params) {
  check_count(x_n, "x_n");
  check_horizon(k);
  const ZLaw law(k, params);
  const auto w = survivor_weights(x_n, law.ak);
  double total = 0.0;
  for (int j = 0; j <= x_n; ++j) total += w[static_cast<std::size_t>(j)] * law.sf(y - j);
  return total;
}

double conditional_mean(int k, int x_n, const PLINARParams& params) {
  check_horizon(k);
  check_count(x_n, "x_n");
  const double ak = std::pow(params.alpha(), k);
  return ak * x_n + (1.0 - ak) * pl_mean(params.marginal());
}

double conditional_variance(int k, int x_n, const PLINARParams& params) {
  check_horizon(k);
  check_count(x_n, "x_n");
  const double a = params.alpha();
  const double ak = std::pow(a, k);
  const auto eps = innovation_moments(params);
  const double one_minus_a2 = 1.0 - a * a;
  return ak * (1.0 - ak) * x_n + (1.0 - ak * ak) / one_minus_a2 * eps.sigma2_eps +
         (1.0 - ak) * (a - ak) / one_minus_a2 * eps.mu_eps;
}

int conditional_truncation_point(int k, int x_n, const PLINARParams& params, double tail) {
  check_horizon(k);
  check_count(x_n, "x_n");
  if (!(tail > 0.0 && tail < 1.0)) fail(ErrorCode::invalid_parameter, "tail must lie in (0, 1)");
  const ZLaw law(k, params);
  const auto w = survivor_weights(x_n, law.ak);
  for (int y = 0; y < kTruncationCap; ++y) {
    double sf = 0.0;
    for (int j = 0; j <= x_n; ++j) sf += w[static_cast<std::size_t>(j)] * law.sf(y - j);
    if (sf <= tail) return y;
  }
  fail(ErrorCode::degenerate_support, "conditional truncation exceeded the support cap");
}

int round_half_up(double value) {
  const double r = std::floor(value + 0.5);
  return r < 0.0 ? 0 : static_cast<int>(r);
}

int median_of(std::span<const double> pmf) {
  double cumulative = 0.0;
  for (std::size_t y = 0; y < pmf.size(); ++y) {
    cumulative += pmf[y];
    if (cumulative >= 0.5) return static_cast<int>(y);
  }
  fail(ErrorCode::degenerate_support, "table holds less than half the mass");
}

int mode_of(std::span<const double> pmf) {
  if (pmf.empty()) fail(ErrorCode::degenerate_support, "empty table has no mode");
  return static_cast<int>(std::max_element(pmf.begin(), pmf.end()) - pmf.begin());
}

PointForecasts ForecastDistribution::point_forecasts() const {
  return {round_half_up(mean), median, mode};
}

ForecastDistribution forecast_distribution(int k, int x_n, const PLINARParams& params,
                                           double tail) {
  const int y_max = conditional_truncation_point(k, x_n, params, tail);
  ForecastDistribution out;
  out.horizon = k;
  out.origin = x_n;
  out.pmf = conditional_pmf_table(y_max, k, x_n, params);
  out.mean = conditional_mean(k, x_n, params);
  out.variance = conditional_variance(k, x_n, params);
  out.median = median_of(out.pmf);
  out.mode = mode_of(out.pmf);
  out.tail_mass = conditional_sf(y_max, k, x_n, params);
  return out;
}

ForecastDistribution stationary_distribution(const PLINARParams& params, double tail) {
  const PLParams pl = params.marginal();
  const int y_max = pl_truncation_point(pl, tail);
  ForecastDistribution out;
  out.horizon = kInfiniteHorizon;
  out.origin = 0;
  out.pmf.reserve(static_cast<std::size_t>(y_max) + 1);
  for (int y = 0; y <= y_max; ++y) out.pmf.push_back(pl_pmf(y, pl));
  out.mean = pl_mean(pl);
  out.variance = pl_var(pl);
  out.median = median_of(out.pmf);
  out.mode = mode_of(out.pmf);
  out.tail_mass = pl_sf(y_max, pl);
  return out;
}

}  // namespace plinar
