#include "plinar/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plinar/error.hpp"
#include "plinar/forecast.hpp"
#include "simplex.hpp"

namespace plinar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Beyond |logit alpha| = kLogitClamp the objective is held at the clamp and
// a quadratic penalty pulls the simplex back.
constexpr double kLogitClamp = 25.0;
constexpr double kBoundaryAlpha = 1e-6;

void require_length(std::span<const int> series, std::size_t n) {
  if (series.size() < n) {
    fail(ErrorCode::degenerate_series, "series needs at least " + std::to_string(n) + " values");
  }
}

double loglik_if_valid(std::span<const int> series, double alpha, double theta) {
  if (!(alpha >= 0.0 && alpha < 1.0)) return kNaN;
  return plinar_log_likelihood(series, PLINARParams(alpha, theta));
}

EstimationResult closed_form(Estimator method, std::span<const int> series, double alpha,
                             double theta, double mu) {
  EstimationResult out;
  out.method = method;
  out.alpha_hat = alpha;
  out.theta_hat = theta;
  out.mu_hat = mu;
  out.alpha_in_range = alpha >= 0.0 && alpha < 1.0;
  out.loglik = loglik_if_valid(series, alpha, theta);
  return out;
}

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

}  // namespace

std::string to_string(Estimator method) {
  switch (method) {
    case Estimator::cls: return "cls";
    case Estimator::yw: return "yw";
    case Estimator::ml: return "ml";
  }
  return "unknown";
}

Estimator parse_estimator(const std::string& name) {
  if (name == "cls") return Estimator::cls;
  if (name == "yw") return Estimator::yw;
  if (name == "ml") return Estimator::ml;
  fail(ErrorCode::invalid_config, "unknown estimator '" + name + "'");
}

PLINARParams EstimationResult::params() const { return PLINARParams(alpha_hat, theta_hat); }

double plinar_log_likelihood(std::span<const int> series, const PLINARParams& params) {
  require_length(series, 1);
  const PLParams marginal = params.marginal();
  double total = pl_log_pmf(series[0], marginal);
  for (std::size_t t = 1; t < series.size(); ++t) {
    total += std::log(conditional_pmf(series[t], 1, series[t - 1], params));
  }
  return total;
}

EstimationResult fit_cls(std::span<const int> series) {
  require_length(series, 3);
  const double m = static_cast<double>(series.size() - 1);
  double sa = 0.0, sb = 0.0, sab = 0.0, sbb = 0.0;
  for (std::size_t t = 1; t < series.size(); ++t) {
    const double a = series[t];
    const double b = series[t - 1];
    sa += a;
    sb += b;
    sab += a * b;
    sbb += b * b;
  }
  const double denom = m * sbb - sb * sb;
  if (denom == 0.0) fail(ErrorCode::degenerate_series, "lagged values are constant");
  const double alpha = (m * sab - sa * sb) / denom;
  if (alpha == 1.0) fail(ErrorCode::degenerate_series, "CLS slope is exactly 1");
  const double mu = (sa - alpha * sb) / (m * (1.0 - alpha));
  if (!(mu > 0.0)) fail(ErrorCode::invalid_mean, "CLS mean estimate is not positive");
  return closed_form(Estimator::cls, series, alpha, pl_theta_from_mean(mu), mu);
}

EstimationResult fit_yw(std::span<const int> series) {
  require_length(series, 2);
  double mean = 0.0;
  for (int v : series) mean += v;
  mean /= static_cast<double>(series.size());
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    const double d = series[t] - mean;
    den += d * d;
    if (t > 0) num += d * (series[t - 1] - mean);
  }
  if (den == 0.0) fail(ErrorCode::degenerate_series, "series has zero variance");
  if (!(mean > 0.0)) fail(ErrorCode::invalid_mean, "series mean is not positive");
  return closed_form(Estimator::yw, series, num / den, pl_theta_from_mean(mean), mean);
}

EstimationResult fit_ml(std::span<const int> series, const MLConfig& config) {
  require_length(series, 2);
  if (config.starts < 1) fail(ErrorCode::invalid_config, "ML needs at least one start");
  double mean = 0.0;
  for (int v : series) mean += v;
  mean /= static_cast<double>(series.size());
  if (!(mean > 0.0)) fail(ErrorCode::degenerate_series, "all-zero series has no ML estimate");

  auto objective = [&](const std::vector<double>& x) {
    const double u = std::clamp(x[0], -kLogitClamp, kLogitClamp);
    const double excess = x[0] - u;
    const double theta = std::exp(x[1]);
    if (!(theta > 0.0) || !std::isfinite(theta)) return std::numeric_limits<double>::infinity();
    return -plinar_log_likelihood(series, PLINARParams(logistic(u), theta)) + excess * excess;
  };

  // Starts: the CLS slope when usable, then a fixed spread of alpha values,
  // all at the moment-based theta.
  std::vector<double> alpha_starts;
  try {
    const EstimationResult cls = fit_cls(series);
    alpha_starts.push_back(std::clamp(cls.alpha_hat, 0.02, 0.98));
  } catch (const Error&) {
  }
  for (double a : {0.05, 0.3, 0.5, 0.7, 0.9}) {
    if (static_cast<int>(alpha_starts.size()) >= config.starts) break;
    alpha_starts.push_back(a);
  }
  while (static_cast<int>(alpha_starts.size()) < config.starts) {
    alpha_starts.push_back(0.1 + 0.8 * static_cast<double>(alpha_starts.size()) / config.starts);
  }
  const double theta0 = pl_theta_from_mean(mean);

  EstimationResult best = closed_form(Estimator::ml, series, kNaN, kNaN, kNaN);
  best.loglik = -std::numeric_limits<double>::infinity();
  best.alpha_in_range = true;
  best.converged = false;
  for (double a0 : alpha_starts) {
    const std::vector<double> start{std::log(a0 / (1.0 - a0)), std::log(theta0)};
    const detail::SimplexResult r =
        detail::minimize_simplex(objective, start, 0.5, config.tolerance, config.max_iterations);
    const double u = std::clamp(r.x[0], -kLogitClamp, kLogitClamp);
    const double alpha = logistic(u);
    const double theta = std::exp(r.x[1]);
    const double ll = plinar_log_likelihood(series, PLINARParams(alpha, theta));
    best.start_logliks.push_back(ll);
    best.iterations += r.iterations;
    if (ll > best.loglik) {
      best.alpha_hat = alpha;
      best.theta_hat = theta;
      best.loglik = ll;
      best.converged = r.converged;
    }
  }
  best.mu_hat = pl_mean(PLParams(best.theta_hat));
  best.boundary = best.alpha_hat < kBoundaryAlpha || best.alpha_hat > 1.0 - kBoundaryAlpha;
  if (!std::isfinite(best.loglik)) {
    fail(ErrorCode::non_convergence, "no start reached a finite log-likelihood");
  }
  return best;
}

EstimationResult fit_plinar(Estimator method, std::span<const int> series, const MLConfig& config) {
  switch (method) {
    case Estimator::cls: return fit_cls(series);
    case Estimator::yw: return fit_yw(series);
    case Estimator::ml: return fit_ml(series, config);
  }
  fail(ErrorCode::invalid_config, "unknown estimator");
}

std::vector<double> to_real(std::span<const int> series) {
  return std::vector<double>(series.begin(), series.end());
}

}  // namespace plinar
