#pragma once

#include <span>
#include <vector>

#include "plinar/pl_dist.hpp"

namespace plinar {

/// sum p log(p/q) over y with p(y) > 0. Tables must share their index range.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// As kl_divergence with q supplied as log q, so far-tail q never underflows.
double kl_divergence_log(std::span<const double> p, std::span<const double> log_q);

/// max |F - G| over a shared index range of two CDF tables.
double kolmogorov_metric(std::span<const double> F, std::span<const double> G);

std::vector<double> cumulative(std::span<const double> pmf);

/// Both distances between the PLINAR conditional law and each of its two
/// matched Gaussian discretizations, at one (alpha, theta, x_n, k).
struct DistanceRecord {
  double alpha;
  double theta;
  int x_n;
  int k;
  double kl_marginal;
  double kl_innovation;
  double kolm_marginal;
  double kolm_innovation;
  int y_max;  // last support point of the shared window
};

/// Tail of the normal tables at the window edge.
inline constexpr double kNormalWindowTail = 1e-10;

/// The window starts at the PLINAR truncation point and widens until the
/// neglected KL terms, bounded by S_p(Y) (1 + max |log p - log q|), fall
/// below tail and both normal upper tails are under kNormalWindowTail.
DistanceRecord distance_record(double alpha, double theta, int x_n, int k = 1,
                               double tail = kDefaultTail);

struct GridPoint {
  double alpha;
  double theta;
  int x_n;
};

enum class Execution { serial, parallel };

/// alpha = 0.05, 0.06, ..., 0.95 (91 points).
std::vector<double> alpha_grid();
/// theta = 0.05, 0.06, ..., 5.00 (496 points).
std::vector<double> theta_grid();

/// One record per point, in input order. The parallel path splits points
/// across OpenMP threads and writes each result to its own slot.
std::vector<DistanceRecord> evaluate_points(std::span<const GridPoint> points, int k, double tail,
                                            Execution exec);

/// Records ordered by (alpha, x_n).
std::vector<DistanceRecord> sweep_alpha(double theta, std::span<const int> x_n_list, int k = 1,
                                        double tail = kDefaultTail,
                                        Execution exec = Execution::parallel);
/// Records ordered by (theta, x_n).
std::vector<DistanceRecord> sweep_theta(double alpha, std::span<const int> x_n_list, int k = 1,
                                        double tail = kDefaultTail,
                                        Execution exec = Execution::parallel);
/// x_n = 0..x_n_max.
std::vector<DistanceRecord> sweep_xn(double alpha, double theta, int x_n_max, int k = 1,
                                     double tail = kDefaultTail,
                                     Execution exec = Execution::parallel);

}  // namespace plinar
