#include "plinar/distances.hpp"

#include <algorithm>
#include <cmath>

#include "plinar/error.hpp"
#include "plinar/forecast.hpp"
#include "plinar/gaussian_approx.hpp"
#include "plinar/normal.hpp"

namespace plinar {

namespace {

void same_range(std::size_t a, std::size_t b) {
  if (a != b) fail(ErrorCode::domain_mismatch, "tables cover different index ranges");
}

// log of a PMF value, kept finite when the value is a denormal or zero.
double safe_log(double v) { return std::log(std::max(v, 1e-320)); }

}  // namespace

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  same_range(p.size(), q.size());
  double total = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (p[y] <= 0.0) continue;
    if (q[y] <= 0.0) fail(ErrorCode::degenerate_support, "q vanishes where p has mass");
    total += p[y] * (std::log(p[y]) - std::log(q[y]));
  }
  return total;
}

double kl_divergence_log(std::span<const double> p, std::span<const double> log_q) {
  same_range(p.size(), log_q.size());
  double total = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (p[y] <= 0.0) continue;
    if (!std::isfinite(log_q[y])) {
      fail(ErrorCode::degenerate_support, "log q is not finite where p has mass");
    }
    total += p[y] * (std::log(p[y]) - log_q[y]);
  }
  return total;
}

double kolmogorov_metric(std::span<const double> F, std::span<const double> G) {
  same_range(F.size(), G.size());
  double worst = 0.0;
  for (std::size_t y = 0; y < F.size(); ++y) worst = std::max(worst, std::abs(F[y] - G[y]));
  return worst;
}

std::vector<double> cumulative(std::span<const double> pmf) {
  std::vector<double> out(pmf.size());
  double running = 0.0;
  for (std::size_t y = 0; y < pmf.size(); ++y) out[y] = running += pmf[y];
  return out;
}

DistanceRecord distance_record(double alpha, double theta, int x_n, int k, double tail) {
  const PLINARParams params(alpha, theta);
  const GaussianApprox approx[2] = {matched_approx(GaussianMethod::marginal, params),
                                    matched_approx(GaussianMethod::innovation, params)};
  double mu[2];
  double sigma[2];
  for (int m = 0; m < 2; ++m) {
    const ConditionalNormal c = gaussian_conditional(k, x_n, approx[m]);
    mu[m] = c.mean;
    sigma[m] = std::sqrt(c.variance);
  }
  auto log_q_at = [&](int m, int y) {
    const double hi = (y - mu[m]) / sigma[m];
    return y == 0 ? log_normal_cdf(hi) : log_normal_interval((y - 1 - mu[m]) / sigma[m], hi);
  };

  int y_max = conditional_truncation_point(k, x_n, params, tail);
  for (;; ++y_max) {
    if (y_max >= kTruncationCap) fail(ErrorCode::degenerate_support, "distance window too wide");
    const double next_log_p = safe_log(conditional_pmf(y_max + 1, k, x_n, params));
    double spread = 0.0;
    bool normal_done = true;
    for (int m = 0; m < 2; ++m) {
      spread = std::max(spread, std::abs(next_log_p - log_q_at(m, y_max + 1)));
      normal_done = normal_done && normal_sf((y_max - mu[m]) / sigma[m]) < kNormalWindowTail;
    }
    if (normal_done && conditional_sf(y_max, k, x_n, params) * (1.0 + spread) <= tail) break;
  }

  const std::vector<double> p = conditional_pmf_table(y_max, k, x_n, params);
  const std::vector<double> F = cumulative(p);
  DistanceRecord rec{alpha, theta, x_n, k, 0.0, 0.0, 0.0, 0.0, y_max};
  for (int m = 0; m < 2; ++m) {
    const DiscretizedPMF q = discretize_normal(mu[m], sigma[m], y_max);
    std::vector<double> G(p.size());
    for (int y = 0; y <= y_max; ++y) G[static_cast<std::size_t>(y)] = normal_cdf((y - mu[m]) / sigma[m]);
    const double kl = kl_divergence_log(p, q.log_q);
    const double kolm = kolmogorov_metric(F, G);
    (m == 0 ? rec.kl_marginal : rec.kl_innovation) = kl;
    (m == 0 ? rec.kolm_marginal : rec.kolm_innovation) = kolm;
  }
  return rec;
}

std::vector<double> alpha_grid() {
  std::vector<double> g;
  for (int i = 5; i <= 95; ++i) g.push_back(i / 100.0);
  return g;
}

std::vector<double> theta_grid() {
  std::vector<double> g;
  for (int i = 5; i <= 500; ++i) g.push_back(i / 100.0);
  return g;
}

std::vector<DistanceRecord> sweep_alpha(double theta, std::span<const int> x_n_list, int k,
                                        double tail, Execution exec) {
  std::vector<GridPoint> pts;
  for (double a : alpha_grid()) {
    for (int x : x_n_list) pts.push_back({a, theta, x});
  }
  return evaluate_points(pts, k, tail, exec);
}

std::vector<DistanceRecord> sweep_theta(double alpha, std::span<const int> x_n_list, int k,
                                        double tail, Execution exec) {
  std::vector<GridPoint> pts;
  for (double t : theta_grid()) {
    for (int x : x_n_list) pts.push_back({alpha, t, x});
  }
  return evaluate_points(pts, k, tail, exec);
}

std::vector<DistanceRecord> sweep_xn(double alpha, double theta, int x_n_max, int k, double tail,
                                     Execution exec) {
  if (x_n_max < 0) fail(ErrorCode::invalid_parameter, "x_n_max must be >= 0");
  std::vector<GridPoint> pts;
  for (int x = 0; x <= x_n_max; ++x) pts.push_back({alpha, theta, x});
  return evaluate_points(pts, k, tail, exec);
}

}  // namespace plinar
