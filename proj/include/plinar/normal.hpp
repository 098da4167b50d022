#pragma once

// Standard normal CDF helpers. All functions are accurate in both tails:
// the lower tail goes through erfc, and the log forms switch to an
// asymptotic expansion where erfc would underflow.

namespace plinar {

double normal_cdf(double z);
double normal_sf(double z);  // 1 - Phi(z) without cancellation

double log_normal_cdf(double z);
double log_normal_sf(double z);

/// log(Phi(hi) - Phi(lo)) for lo < hi, stable when both bounds sit in
/// the same far tail.
double log_normal_interval(double lo, double hi);

}  // namespace plinar
