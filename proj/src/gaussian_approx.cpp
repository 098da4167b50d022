#include "plinar/gaussian_approx.hpp"

#include <algorithm>
#include <cmath>

#include "plinar/error.hpp"
#include "plinar/normal.hpp"

namespace plinar {

std::string to_string(GaussianMethod method) {
  switch (method) {
    case GaussianMethod::innovation: return "innovation";
    case GaussianMethod::marginal: return "marginal";
    case GaussianMethod::traditional: return "traditional";
  }
  return "unknown";
}

InnovationMoments match_innovation_moments(const PLINARParams& params) {
  return innovation_moments(params);
}

InnovationMoments match_marginal_moments(const PLINARParams& params) {
  const double a = params.alpha();
  const double t = params.theta();
  const double denom = t * t * (t + 1.0) * (t + 1.0);
  const double p = ((t + 4.0) * t + 6.0) * t + 2.0;
  return {innovation_moments(params).mu_eps, (1.0 - a * a) * p / denom};
}

double variance_ratio(const PLINARParams& params) {
  return match_marginal_moments(params).sigma2_eps / match_innovation_moments(params).sigma2_eps;
}

GaussianApprox matched_approx(GaussianMethod method, const PLINARParams& params) {
  InnovationMoments m{};
  switch (method) {
    case GaussianMethod::innovation: m = match_innovation_moments(params); break;
    case GaussianMethod::marginal: m = match_marginal_moments(params); break;
    case GaussianMethod::traditional:
      fail(ErrorCode::invalid_parameter, "the traditional model is fitted, not matched");
  }
  return {method, params.alpha(), m.mu_eps, m.sigma2_eps};
}

GaussianApprox traditional_approx(double phi, double mu_e, double sigma2_e) {
  if (!(phi >= 0.0 && phi < 1.0)) fail(ErrorCode::invalid_parameter, "phi must lie in [0, 1)");
  if (!(sigma2_e > 0.0)) fail(ErrorCode::invalid_parameter, "sigma2_e must be > 0");
  return {GaussianMethod::traditional, phi, mu_e, sigma2_e};
}

ConditionalNormal gaussian_conditional(int k, double w, double phi, double mu_e,
                                       double sigma2_e) {
  if (k < 1) fail(ErrorCode::invalid_parameter, "horizon k must be >= 1");
  if (!(phi >= 0.0 && phi < 1.0)) fail(ErrorCode::invalid_parameter, "phi must lie in [0, 1)");
  if (!(sigma2_e > 0.0)) fail(ErrorCode::invalid_parameter, "sigma2_e must be > 0");
  const double pk = std::pow(phi, k);
  return {pk * w + mu_e * (1.0 - pk) / (1.0 - phi),
          (1.0 - pk * pk) / (1.0 - phi * phi) * sigma2_e};
}

ConditionalNormal gaussian_conditional(int k, double w, const GaussianApprox& approx) {
  return gaussian_conditional(k, w, approx.phi, approx.mu_e, approx.sigma2_e);
}

ConditionalNormal gaussian_stationary(const GaussianApprox& approx) {
  return {approx.mu_e / (1.0 - approx.phi), approx.sigma2_e / (1.0 - approx.phi * approx.phi)};
}

DiscretizedPMF discretize_normal(double mu, double sigma, int y_max) {
  if (!(sigma > 0.0)) fail(ErrorCode::invalid_parameter, "sigma must be > 0");
  if (y_max < 0) fail(ErrorCode::invalid_parameter, "y_max must be >= 0");
  DiscretizedPMF out{{}, {}, mu, sigma};
  out.q.reserve(static_cast<std::size_t>(y_max) + 1);
  out.log_q.reserve(out.q.capacity());
  for (int y = 0; y <= y_max; ++y) {
    const double hi = (y - mu) / sigma;
    const double lq = y == 0 ? log_normal_cdf(hi) : log_normal_interval((y - 1 - mu) / sigma, hi);
    out.log_q.push_back(lq);
    out.q.push_back(std::exp(lq));
  }
  return out;
}

int normal_truncation_point(double mu, double sigma, double tail) {
  if (!(sigma > 0.0)) fail(ErrorCode::invalid_parameter, "sigma must be > 0");
  if (!(tail > 0.0 && tail < 1.0)) fail(ErrorCode::invalid_parameter, "tail must lie in (0, 1)");
  int y = std::max(0, static_cast<int>(std::floor(mu)));
  while (y > 0 && normal_sf((y - 1 - mu) / sigma) <= tail) --y;
  while (normal_sf((y - mu) / sigma) > tail) {
    if (++y >= kTruncationCap) fail(ErrorCode::degenerate_support, "normal table exceeded the cap");
  }
  return y;
}

ForecastDistribution gaussian_forecast_distribution(int k, double w, const GaussianApprox& approx,
                                                    double tail) {
  const ConditionalNormal c =
      k == kInfiniteHorizon ? gaussian_stationary(approx) : gaussian_conditional(k, w, approx);
  const double sigma = std::sqrt(c.variance);
  const int y_max = normal_truncation_point(c.mean, sigma, tail);
  ForecastDistribution out;
  out.horizon = k;
  out.origin = static_cast<int>(std::lround(w));
  out.pmf = discretize_normal(c.mean, sigma, y_max).q;
  out.mean = c.mean;
  out.variance = c.variance;
  out.median = median_of(out.pmf);
  out.mode = mode_of(out.pmf);
  out.tail_mass = normal_sf((y_max - c.mean) / sigma);
  return out;
}

PointForecasts gaussian_point_forecasts(int k, double w, const GaussianApprox& approx,
                                        double tail) {
  const ForecastDistribution d = gaussian_forecast_distribution(k, w, approx, tail);
  const int rounded = round_half_up(d.mean);
  if (approx.method == GaussianMethod::traditional) return {rounded, rounded, rounded};
  return {rounded, d.median, d.mode};
}

}  // namespace plinar
