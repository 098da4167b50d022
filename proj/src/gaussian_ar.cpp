#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "plinar/error.hpp"
#include "plinar/estimate.hpp"
#include "simplex.hpp"

namespace plinar {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sample_mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Biased sample autocovariances at lags 0..p.
std::vector<double> autocovariances(std::span<const double> x, int p) {
  const double m = sample_mean(x);
  const std::size_t n = x.size();
  std::vector<double> g(static_cast<std::size_t>(p) + 1, 0.0);
  for (int h = 0; h <= p; ++h) {
    double s = 0.0;
    for (std::size_t t = static_cast<std::size_t>(h); t < n; ++t) s += (x[t] - m) * (x[t - h] - m);
    g[static_cast<std::size_t>(h)] = s / static_cast<double>(n);
  }
  return g;
}

// AR coefficients from partial autocorrelations (Levinson step-up).
std::vector<double> pacf_to_phi(std::span<const double> pacf) {
  std::vector<double> phi;
  for (double r : pacf) {
    std::vector<double> next(phi.size() + 1);
    for (std::size_t j = 0; j < phi.size(); ++j) next[j] = phi[j] - r * phi[phi.size() - 1 - j];
    next.back() = r;
    phi = std::move(next);
  }
  return phi;
}

// Autocovariances 0..p of a unit-variance-innovation AR(p); empty if the
// system is singular.
std::vector<double> model_autocovariances(std::span<const double> phi) {
  const int p = static_cast<int>(phi.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(p + 1, p + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p + 1);
  b(0) = 1.0;
  for (int k = 0; k <= p; ++k) {
    for (int j = 1; j <= p; ++j) A(k, std::abs(k - j)) -= phi[static_cast<std::size_t>(j - 1)];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) return {};
  const Eigen::VectorXd g = lu.solve(b);
  return {g.data(), g.data() + g.size()};
}

// Sum of squares S (with sigma2 = 1 scaling) and log|V_p| for the exact
// likelihood; false if the start covariance is not positive definite.
bool exact_terms(std::span<const double> x, std::span<const double> phi, double mean, double& S,
                 double& logdet) {
  const int p = static_cast<int>(phi.size());
  const int n = static_cast<int>(x.size());
  const std::vector<double> g = model_autocovariances(phi);
  if (g.empty() || !(g[0] > 0.0)) return false;
  Eigen::MatrixXd V(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) V(i, j) = g[static_cast<std::size_t>(std::abs(i - j))];
  }
  Eigen::LLT<Eigen::MatrixXd> llt(V);
  if (llt.info() != Eigen::Success) return false;
  Eigen::VectorXd e(p);
  for (int i = 0; i < p; ++i) e(i) = x[static_cast<std::size_t>(i)] - mean;
  S = e.dot(llt.solve(e));
  logdet = 0.0;
  for (int i = 0; i < p; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  for (int t = p; t < n; ++t) {
    double r = x[static_cast<std::size_t>(t)] - mean;
    for (int j = 1; j <= p; ++j) {
      r -= phi[static_cast<std::size_t>(j - 1)] * (x[static_cast<std::size_t>(t - j)] - mean);
    }
    S += r * r;
  }
  return true;
}

void finish(ARFitResult& fit, std::span<const double> x) {
  double sum_phi = 0.0;
  for (double v : fit.phi) sum_phi += v;
  fit.intercept = fit.mean * (1.0 - sum_phi);
  if (!(fit.sigma2 > 0.0)) fail(ErrorCode::degenerate_series, "zero residual variance");
  fit.loglik = gaussian_ar_log_likelihood(x, fit.phi, fit.mean, fit.sigma2);
  const double n = static_cast<double>(x.size());
  const double k = fit.order + 2.0;
  fit.aic = -2.0 * fit.loglik + 2.0 * k;
  fit.aicc = fit.aic + 2.0 * k * (k + 1.0) / (n - k - 1.0);
  fit.bic = -2.0 * fit.loglik + k * std::log(n);
}

struct Levinson {
  std::vector<double> pacf;
  std::vector<double> phi;
  double innovation_variance;
};

Levinson durbin_levinson(std::span<const double> g, int p) {
  Levinson out{{}, {}, g[0]};
  for (int k = 1; k <= p; ++k) {
    double num = g[static_cast<std::size_t>(k)];
    for (int j = 1; j < k; ++j) {
      num -= out.phi[static_cast<std::size_t>(j - 1)] * g[static_cast<std::size_t>(k - j)];
    }
    const double r = num / out.innovation_variance;
    out.pacf.push_back(r);
    out.phi = pacf_to_phi(out.pacf);
    out.innovation_variance *= 1.0 - r * r;
  }
  return out;
}

ARFitResult fit_yw_ar(std::span<const double> x, int p) {
  const std::vector<double> g = autocovariances(x, p);
  if (!(g[0] > 0.0)) fail(ErrorCode::degenerate_series, "series has zero variance");
  const Levinson dl = durbin_levinson(g, p);
  ARFitResult fit{p, ARMethod::yw, dl.phi, sample_mean(x), 0.0, dl.innovation_variance,
                  0.0, 0.0, 0.0, 0.0};
  finish(fit, x);
  return fit;
}

ARFitResult fit_ols_ar(std::span<const double> x, int p) {
  const int n = static_cast<int>(x.size());
  const int rows = n - p;
  Eigen::MatrixXd X(rows, p + 1);
  Eigen::VectorXd y(rows);
  for (int t = p; t < n; ++t) {
    X(t - p, 0) = 1.0;
    for (int j = 1; j <= p; ++j) X(t - p, j) = x[static_cast<std::size_t>(t - j)];
    y(t - p) = x[static_cast<std::size_t>(t)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < p + 1) fail(ErrorCode::degenerate_series, "AR design matrix is singular");
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - X * beta;
  std::vector<double> phi(beta.data() + 1, beta.data() + beta.size());
  double sum_phi = 0.0;
  for (double v : phi) sum_phi += v;
  if (sum_phi == 1.0) fail(ErrorCode::degenerate_series, "AR fit has a unit root");
  const double dof = rows - (p + 1.0);
  if (!(dof > 0.0)) fail(ErrorCode::degenerate_series, "too few observations for AR order");
  ARFitResult fit{p, ARMethod::ols, phi, beta(0) / (1.0 - sum_phi), 0.0,
                  resid.squaredNorm() / dof, 0.0, 0.0, 0.0, 0.0};
  finish(fit, x);
  return fit;
}

ARFitResult fit_mle_ar(std::span<const double> x, int p) {
  const ARFitResult yw = fit_yw_ar(x, p);
  const double n = static_cast<double>(x.size());
  auto negloglik = [&](const std::vector<double>& z) {
    std::vector<double> pacf(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) pacf[static_cast<std::size_t>(i)] = std::tanh(z[static_cast<std::size_t>(i)]);
    const std::vector<double> phi = pacf_to_phi(pacf);
    double S = 0.0, logdet = 0.0;
    if (!exact_terms(x, phi, z[static_cast<std::size_t>(p)], S, logdet) || !(S > 0.0)) {
      return std::numeric_limits<double>::infinity();
    }
    return 0.5 * (n * std::log(2.0 * std::numbers::pi * S / n) + logdet + n);
  };
  // PACF of the Yule-Walker fit, then white noise.
  std::vector<std::vector<double>> starts(2, std::vector<double>(static_cast<std::size_t>(p) + 1, 0.0));
  const Levinson dl = durbin_levinson(autocovariances(x, p), p);
  for (int k = 0; k < p; ++k) {
    starts[0][static_cast<std::size_t>(k)] = std::atanh(std::clamp(dl.pacf[static_cast<std::size_t>(k)], -0.99, 0.99));
  }
  starts[0][static_cast<std::size_t>(p)] = yw.mean;
  starts[1][static_cast<std::size_t>(p)] = yw.mean;

  detail::SimplexResult best{{}, std::numeric_limits<double>::infinity(), 0, false};
  int iterations = 0;
  for (const auto& s : starts) {
    const detail::SimplexResult r = detail::minimize_simplex(negloglik, s, 0.2, 1e-10, 20000);
    iterations += r.iterations;
    if (r.value < best.value) best = r;
  }
  if (!std::isfinite(best.value)) fail(ErrorCode::non_convergence, "AR likelihood search failed");
  std::vector<double> pacf(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) pacf[static_cast<std::size_t>(i)] = std::tanh(best.x[static_cast<std::size_t>(i)]);
  const std::vector<double> phi = pacf_to_phi(pacf);
  const double mean = best.x[static_cast<std::size_t>(p)];
  double S = 0.0, logdet = 0.0;
  exact_terms(x, phi, mean, S, logdet);
  ARFitResult fit{p, ARMethod::mle, phi, mean, 0.0, S / n, 0.0, 0.0, 0.0, 0.0};
  fit.converged = best.converged;
  finish(fit, x);
  return fit;
}

}  // namespace

std::string to_string(ARMethod method) {
  switch (method) {
    case ARMethod::ols: return "ols";
    case ARMethod::yw: return "yw";
    case ARMethod::mle: return "mle";
  }
  return "unknown";
}

ARMethod parse_ar_method(const std::string& name) {
  if (name == "ols") return ARMethod::ols;
  if (name == "yw") return ARMethod::yw;
  if (name == "mle" || name == "ml") return ARMethod::mle;
  fail(ErrorCode::invalid_config, "unknown AR method '" + name + "'");
}

double gaussian_ar_log_likelihood(std::span<const double> series, std::span<const double> phi,
                                  double mean, double sigma2) {
  if (!(sigma2 > 0.0)) fail(ErrorCode::invalid_parameter, "sigma2 must be > 0");
  double S = 0.0, logdet = 0.0;
  if (!exact_terms(series, phi, mean, S, logdet)) return kNaN;
  const double n = static_cast<double>(series.size());
  return -0.5 * (n * std::log(2.0 * std::numbers::pi * sigma2) + logdet + S / sigma2);
}

ARFitResult fit_gaussian_ar(std::span<const double> series, int order, ARMethod method) {
  if (order < 1) fail(ErrorCode::invalid_parameter, "AR order must be >= 1");
  if (series.size() <= static_cast<std::size_t>(order) + 1) {
    fail(ErrorCode::degenerate_series, "series too short for AR(" + std::to_string(order) + ")");
  }
  switch (method) {
    case ARMethod::ols: return fit_ols_ar(series, order);
    case ARMethod::yw: return fit_yw_ar(series, order);
    case ARMethod::mle: return fit_mle_ar(series, order);
  }
  fail(ErrorCode::invalid_config, "unknown AR method");
}

OrderSelection select_ar_order(std::span<const double> series, int p_max, ARMethod method) {
  if (p_max < 1) fail(ErrorCode::invalid_parameter, "p_max must be >= 1");
  OrderSelection out{{}, 1, 1, 1};
  for (int p = 1; p <= p_max; ++p) out.fits.push_back(fit_gaussian_ar(series, p, method));
  for (int p = 2; p <= p_max; ++p) {
    const ARFitResult& f = out.fits[static_cast<std::size_t>(p - 1)];
    if (f.aic < out.fits[static_cast<std::size_t>(out.best_aic - 1)].aic) out.best_aic = p;
    if (f.aicc < out.fits[static_cast<std::size_t>(out.best_aicc - 1)].aicc) out.best_aicc = p;
    if (f.bic < out.fits[static_cast<std::size_t>(out.best_bic - 1)].bic) out.best_bic = p;
  }
  return out;
}

}  // namespace plinar
