#pragma once

#include <cstdint>
#include <random>

namespace plinar {

using Rng = std::mt19937_64;

/// Upper-tail mass left out by every truncated sum in the library.
inline constexpr double kDefaultTail = 1e-12;
/// Hard cap on the number of support points any truncation may visit.
inline constexpr int kTruncationCap = 1'000'000;

/// Poisson-Lindley rate parameter; construction rejects theta <= 0.
class PLParams {
 public:
  explicit PLParams(double theta);

  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

// P(X = x) = theta^2 (x + theta + 2) / (1 + theta)^(x + 3), evaluated in
// log space so large x cannot overflow the denominator.
double pl_log_pmf(int x, PLParams params);
double pl_pmf(int x, PLParams params);

/// P(X > x), closed form (theta^2 + theta (x + 3) + 1) / (1 + theta)^(x + 3).
double pl_sf(int x, PLParams params);
double pl_cdf(int x, PLParams params);

double pl_mean(PLParams params);
double pl_var(PLParams params);

/// Inverse of pl_mean: the positive root of mu theta^2 + (mu - 1) theta - 2.
double pl_theta_from_mean(double mu);

/// Smallest x whose cumulative mass reaches 1 - tail.
int pl_truncation_point(PLParams params, double tail = kDefaultTail);

/// One PL(theta) draw: Poisson with a Lindley-distributed rate, the rate
/// being Exp(theta) w.p. theta/(theta+1) and Gamma(2, theta) otherwise.
int pl_sample(PLParams params, Rng& rng);

}  // namespace plinar
