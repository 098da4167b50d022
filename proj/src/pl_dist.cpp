#include "plinar/pl_dist.hpp"

#include <cmath>
#include <string>

#include "plinar/error.hpp"

namespace plinar {

namespace {

void check_support(int x) {
  if (x < 0) fail(ErrorCode::invalid_parameter, "count must be >= 0, got " + std::to_string(x));
}

}  // namespace

PLParams::PLParams(double theta) : theta_(theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    fail(ErrorCode::invalid_parameter, "theta must be finite and > 0, got " + std::to_string(theta));
  }
}

double pl_log_pmf(int x, PLParams params) {
  check_support(x);
  const double t = params.theta();
  return 2.0 * std::log(t) + std::log(x + t + 2.0) - (x + 3.0) * std::log1p(t);
}

double pl_pmf(int x, PLParams params) { return std::exp(pl_log_pmf(x, params)); }

double pl_sf(int x, PLParams params) {
  if (x < 0) return 1.0;
  const double t = params.theta();
  return (t * t + t * (x + 3.0) + 1.0) * std::exp(-(x + 3.0) * std::log1p(t));
}

double pl_cdf(int x, PLParams params) {
  check_support(x);
  return 1.0 - pl_sf(x, params);
}

double pl_mean(PLParams params) {
  const double t = params.theta();
  return (t + 2.0) / (t * (t + 1.0));
}

double pl_var(PLParams params) {
  const double t = params.theta();
  const double tp1 = t + 1.0;
  return (((t + 4.0) * t + 6.0) * t + 2.0) / (t * t * tp1 * tp1);
}

double pl_theta_from_mean(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    fail(ErrorCode::invalid_parameter, "mean must be finite and > 0, got " + std::to_string(mu));
  }
  const double b = mu - 1.0;
  const double disc = std::sqrt(b * b + 8.0 * mu);
  // For mu > 1 the textbook root cancels; use the conjugate form there.
  if (b > 0.0) return 4.0 / (b + disc);
  return (-b + disc) / (2.0 * mu);
}

int pl_truncation_point(PLParams params, double tail) {
  if (!(tail > 0.0 && tail < 1.0)) {
    fail(ErrorCode::invalid_parameter, "tail must lie in (0, 1)");
  }
  for (int x = 0; x < kTruncationCap; ++x) {
    if (pl_sf(x, params) <= tail) return x;
  }
  fail(ErrorCode::degenerate_support, "PL truncation exceeded the support cap");
}

int pl_sample(PLParams params, Rng& rng) {
  const double t = params.theta();
  std::bernoulli_distribution pick_exponential(t / (t + 1.0));
  const double shape = pick_exponential(rng) ? 1.0 : 2.0;
  std::gamma_distribution<double> rate(shape, 1.0 / t);
  const double lambda = rate(rng);
  if (!(lambda > 0.0)) return 0;
  std::poisson_distribution<int> count(lambda);
  return count(rng);
}

}  // namespace plinar
