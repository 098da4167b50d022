#include "plinar/process.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plinar/error.hpp"
#include "plinar/forecast.hpp"

namespace plinar {

PLINARParams::PLINARParams(double alpha, double theta) : alpha_(alpha), theta_(theta) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    fail(ErrorCode::invalid_parameter, "alpha must lie in [0, 1), got " + std::to_string(alpha));
  }
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    fail(ErrorCode::invalid_parameter, "theta must be finite and > 0, got " + std::to_string(theta));
  }
}

int binomial_thin(int x, double alpha, Rng& rng) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    fail(ErrorCode::invalid_parameter, "thinning alpha must lie in [0, 1]");
  }
  if (x < 0) fail(ErrorCode::invalid_parameter, "cannot thin a negative count");
  if (x == 0 || alpha == 0.0) return 0;
  if (alpha == 1.0) return x;
  std::binomial_distribution<int> survivors(x, alpha);
  return survivors(rng);
}

double innovation_pmf(int z, const PLINARParams& params) { return z_step_pmf(z, 1, params); }

InnovationMoments innovation_moments(const PLINARParams& params) {
  const double a = params.alpha();
  const double t = params.theta();
  const double denom = t * t * (t + 1.0) * (t + 1.0);
  const double p = ((t + 4.0) * t + 6.0) * t + 2.0;
  const double q = (t + 4.0) * t + 2.0;
  return {(1.0 - a) * (t + 2.0) / (t * (t + 1.0)), (1.0 - a) * (p + a * q) / denom};
}

InnovationSampler::InnovationSampler(const PLINARParams& params, double tail) : params_(params) {
  double cumulative = 0.0;
  for (int z = 0; z < kTruncationCap; ++z) {
    cumulative += innovation_pmf(z, params_);
    cdf_.push_back(cumulative);
    if (z_step_sf(z, 1, params_) <= tail) return;
  }
  fail(ErrorCode::degenerate_support, "innovation table exceeded the support cap");
}

int InnovationSampler::operator()(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it != cdf_.end()) return static_cast<int>(it - cdf_.begin());
  // u fell in the untabulated tail: keep walking the exact PMF.
  double cumulative = cdf_.back();
  for (int z = static_cast<int>(cdf_.size()); z < kTruncationCap; ++z) {
    cumulative += innovation_pmf(z, params_);
    if (cumulative >= u) return z;
  }
  return kTruncationCap;
}

std::vector<int> simulate_plinar(int n, const PLINARParams& params, std::uint64_t seed,
                                 int burn_in) {
  if (n < 1) fail(ErrorCode::invalid_parameter, "series length must be >= 1");
  if (burn_in < 0) fail(ErrorCode::invalid_parameter, "burn-in must be >= 0");
  Rng rng(seed);
  const InnovationSampler innovation(params);
  int current = pl_sample(params.marginal(), rng);
  for (int i = 0; i < burn_in; ++i) {
    current = binomial_thin(current, params.alpha(), rng) + innovation(rng);
  }
  std::vector<int> path;
  path.reserve(static_cast<std::size_t>(n));
  path.push_back(current);
  for (int i = 1; i < n; ++i) {
    current = binomial_thin(current, params.alpha(), rng) + innovation(rng);
    path.push_back(current);
  }
  return path;
}

std::vector<std::vector<int>> simulate_replicates_serial(int replicates, int n,
                                                         const PLINARParams& params,
                                                         std::uint64_t base_seed) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(std::max(replicates, 0)));
  for (int r = 0; r < replicates; ++r) {
    out[static_cast<std::size_t>(r)] = simulate_plinar(n, params, base_seed + static_cast<std::uint64_t>(r));
  }
  return out;
}

std::vector<std::vector<int>> simulate_replicates(int replicates, int n,
                                                  const PLINARParams& params,
                                                  std::uint64_t base_seed) {
  if (n < 1) fail(ErrorCode::invalid_parameter, "series length must be >= 1");
  std::vector<std::vector<int>> out(static_cast<std::size_t>(std::max(replicates, 0)));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < replicates; ++r) {
    out[static_cast<std::size_t>(r)] = simulate_plinar(n, params, base_seed + static_cast<std::uint64_t>(r));
  }
  return out;
}

}  // namespace plinar
