#pragma once

#include <span>
#include <string>
#include <vector>

#include "plinar/process.hpp"

namespace plinar {

enum class Estimator { cls, yw, ml };

std::string to_string(Estimator method);
Estimator parse_estimator(const std::string& name);

struct MLConfig {
  int starts = 5;
  double tolerance = 1e-8;
  int max_iterations = 5000;
};

struct EstimationResult {
  Estimator method = Estimator::cls;
  double alpha_hat = 0.0;
  double theta_hat = 0.0;
  double mu_hat = 0.0;
  double loglik = 0.0;  // at the estimate; NaN when alpha_hat is out of range
  bool alpha_in_range = false;
  // ML only
  bool boundary = false;
  bool converged = true;
  int iterations = 0;
  std::vector<double> start_logliks;

  /// Throws invalid-parameter when alpha_hat lies outside [0, 1).
  PLINARParams params() const;
};

/// Full log-likelihood: PL(theta) for the first value, then one-step
/// conditional transitions.
double plinar_log_likelihood(std::span<const int> series, const PLINARParams& params);

EstimationResult fit_cls(std::span<const int> series);
EstimationResult fit_yw(std::span<const int> series);
EstimationResult fit_ml(std::span<const int> series, const MLConfig& config = {});
EstimationResult fit_plinar(Estimator method, std::span<const int> series,
                            const MLConfig& config = {});

enum class ARMethod { ols, yw, mle };

std::string to_string(ARMethod method);
ARMethod parse_ar_method(const std::string& name);

/// Gaussian AR(p) with mean: X_t - mean = sum phi_j (X_{t-j} - mean) + e_t.
struct ARFitResult {
  int order;
  ARMethod method;
  std::vector<double> phi;
  double mean;
  double intercept;  // mean (1 - sum phi)
  double sigma2;
  double loglik;  // exact Gaussian log-likelihood at the fit
  double aic;
  double aicc;
  double bic;
  bool converged = true;
};

/// Exact (stationary-start) Gaussian AR(p) log-likelihood.
double gaussian_ar_log_likelihood(std::span<const double> series, std::span<const double> phi,
                                  double mean, double sigma2);

ARFitResult fit_gaussian_ar(std::span<const double> series, int order, ARMethod method);

struct OrderSelection {
  std::vector<ARFitResult> fits;  // p = 1..p_max
  int best_aic;
  int best_aicc;
  int best_bic;
};

OrderSelection select_ar_order(std::span<const double> series, int p_max,
                               ARMethod method = ARMethod::mle);

std::vector<double> to_real(std::span<const int> series);

}  // namespace plinar
