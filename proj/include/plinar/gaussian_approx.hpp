#pragma once

#include <string>
#include <vector>

#include "plinar/forecast.hpp"
#include "plinar/process.hpp"

namespace plinar {

enum class GaussianMethod { innovation, marginal, traditional };

std::string to_string(GaussianMethod method);

/// Gaussian AR(1) W_t = phi W_{t-1} + e_t with e_t ~ N(mu_e, sigma2_e).
struct GaussianApprox {
  GaussianMethod method;
  double phi;
  double mu_e;
  double sigma2_e;
};

struct ConditionalNormal {
  double mean;
  double variance;
};

/// Innovation moments of the PLINAR(1) process, used as-is.
InnovationMoments match_innovation_moments(const PLINARParams& params);

/// Same mu_e; sigma2_e chosen so the stationary variance equals the PL variance.
InnovationMoments match_marginal_moments(const PLINARParams& params);

/// Marginal-method sigma2_e over innovation-method sigma2_e.
double variance_ratio(const PLINARParams& params);

/// phi = alpha with the matched innovation moments.
GaussianApprox matched_approx(GaussianMethod method, const PLINARParams& params);

/// An AR(1) fitted directly to data, given as intercept mu_e = mean (1 - phi).
GaussianApprox traditional_approx(double phi, double mu_e, double sigma2_e);

ConditionalNormal gaussian_conditional(int k, double w, double phi, double mu_e,
                                       double sigma2_e);
ConditionalNormal gaussian_conditional(int k, double w, const GaussianApprox& approx);

/// The k -> infinity law N(mu_e / (1 - phi), sigma2_e / (1 - phi^2)).
ConditionalNormal gaussian_stationary(const GaussianApprox& approx);

/// Integer discretization: q(0) = Phi(-mu/sigma), q(y) = Phi((y-mu)/sigma) -
/// Phi((y-1-mu)/sigma). The upper tail past y_max is left out, not folded in.
struct DiscretizedPMF {
  std::vector<double> q;
  std::vector<double> log_q;
  double mu;
  double sigma;
};

DiscretizedPMF discretize_normal(double mu, double sigma, int y_max);

/// Smallest Y >= 0 with 1 - Phi((Y - mu) / sigma) <= tail.
int normal_truncation_point(double mu, double sigma, double tail = kDefaultTail);

/// Discretized conditional law as a forecast table; k = kInfiniteHorizon
/// gives the stationary law.
ForecastDistribution gaussian_forecast_distribution(int k, double w, const GaussianApprox& approx,
                                                    double tail = kDefaultTail);

/// Rounded mean plus median and mode of the discretized law. For the
/// traditional model all three are the rounded mean: a normal's median and
/// mode coincide with its mean.
PointForecasts gaussian_point_forecasts(int k, double w, const GaussianApprox& approx,
                                        double tail = kDefaultTail);

}  // namespace plinar
