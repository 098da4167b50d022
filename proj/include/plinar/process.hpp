#pragma once

#include <cstdint>
#include <vector>

#include "plinar/pl_dist.hpp"

namespace plinar {

/// PLINAR(1) parameters: survival probability alpha in [0, 1) and PL rate
/// theta > 0. alpha = 1 is excluded because the moment-matching
/// denominators 1 - alpha and 1 - alpha^2 vanish there.
class PLINARParams {
 public:
  PLINARParams(double alpha, double theta);

  double alpha() const noexcept { return alpha_; }
  double theta() const noexcept { return theta_; }
  PLParams marginal() const { return PLParams(theta_); }

 private:
  double alpha_;
  double theta_;
};

struct InnovationMoments {
  double mu_eps;
  double sigma2_eps;
};

/// Binomial(x, alpha) draw: the number of survivors of x Bernoulli trials.
int binomial_thin(int x, double alpha, Rng& rng);

/// Law of the innovation I_t H_t: the one-step case of the Z-step PMF.
double innovation_pmf(int z, const PLINARParams& params);

InnovationMoments innovation_moments(const PLINARParams& params);

/// Inverse-CDF sampler over the tabulated innovation law. The table covers
/// all but `tail` of the mass; draws past it extend the walk on demand.
class InnovationSampler {
 public:
  explicit InnovationSampler(const PLINARParams& params, double tail = kDefaultTail);

  int operator()(Rng& rng) const;

  const std::vector<double>& cdf() const noexcept { return cdf_; }

 private:
  PLINARParams params_;
  std::vector<double> cdf_;
};

/// X_0 ~ PL(theta); X_t = alpha o X_{t-1} + innovation. The first
/// `burn_in` values are discarded and n values are returned.
std::vector<int> simulate_plinar(int n, const PLINARParams& params, std::uint64_t seed,
                                 int burn_in = 0);

/// Independent replicate paths; replicate i uses seed base_seed + i, so the
/// parallel and serial versions return identical output.
std::vector<std::vector<int>> simulate_replicates_serial(int replicates, int n,
                                                         const PLINARParams& params,
                                                         std::uint64_t base_seed);
std::vector<std::vector<int>> simulate_replicates(int replicates, int n,
                                                  const PLINARParams& params,
                                                  std::uint64_t base_seed);

}  // namespace plinar
