#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "plinar/error.hpp"
#include "plinar/estimate.hpp"
#include "plinar/forecast.hpp"
#include "plinar/series.hpp"

using namespace plinar;

namespace {

std::vector<int> fixture(std::size_t n) {
  auto v = ingest_csv(PLINAR_FIXTURE).values;
  v.resize(n);
  return v;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_CASE("closed-form estimates on the first 141 fixture values") {
  const auto x = fixture(141);
  const auto cls = fit_cls(x);
  const auto yw = fit_yw(x);
  CHECK(cls.alpha_hat == doctest::Approx(0.229673).epsilon(2e-6));
  CHECK(cls.theta_hat == doctest::Approx(2.167110).epsilon(2e-6));
  CHECK(yw.alpha_hat == doctest::Approx(0.229114).epsilon(2e-6));
  CHECK(yw.theta_hat == doctest::Approx(2.180400).epsilon(2e-6));
  CHECK(yw.mu_hat == 85.0 / 141.0);
  CHECK(yw.theta_hat == pl_theta_from_mean(yw.mu_hat));
  CHECK(cls.alpha_in_range);
}

TEST_CASE("ML on the first 141 fixture values") {
  const auto x = fixture(141);
  const auto ml = fit_ml(x);
  CHECK(ml.alpha_hat == doctest::Approx(0.102805).epsilon(1e-4));
  CHECK(ml.theta_hat == doctest::Approx(2.190040).epsilon(1e-4));
  CHECK(ml.loglik == doctest::Approx(-148.6576).epsilon(1e-6));
  CHECK(ml.converged);
  CHECK_FALSE(ml.boundary);
  REQUIRE(ml.start_logliks.size() == 5);
  const auto [lo, hi] = std::minmax_element(ml.start_logliks.begin(), ml.start_logliks.end());
  CHECK(*hi - *lo < 1e-6);
  CHECK(ml.loglik >= fit_cls(x).loglik);
  CHECK(ml.loglik >= fit_yw(x).loglik);
}

TEST_CASE("log-likelihood is the PL start plus transitions") {
  const std::vector<int> x{2, 0, 1};
  const PLINARParams p(0.3, 1.5);
  const double expected = pl_log_pmf(2, PLParams(1.5)) + std::log(conditional_pmf(0, 1, 2, p)) +
                          std::log(conditional_pmf(1, 1, 0, p));
  CHECK(plinar_log_likelihood(x, p) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("alternating series gives a flagged negative CLS slope") {
  std::vector<int> x;
  for (int i = 0; i < 40; ++i) x.push_back(i % 2);
  const auto cls = fit_cls(x);
  CHECK(cls.alpha_hat == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK_FALSE(cls.alpha_in_range);
  CHECK(std::isnan(cls.loglik));
  CHECK_THROWS_AS(cls.params(), Error);
}

TEST_CASE("degenerate series") {
  const std::vector<int> flat(20, 2);
  try {
    fit_yw(flat);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_series);
  }
  CHECK_THROWS_AS(fit_cls(flat), Error);
  CHECK_THROWS_AS(fit_cls(std::vector<int>{1, 2}), Error);
}

TEST_CASE("CLS slope is unbiased-ish for iid PL data") {
  const PLINARParams p(0.0, 1.0);
  std::vector<double> est;
  for (int r = 0; r < 500; ++r) est.push_back(fit_cls(simulate_plinar(500, p, 1000 + r)).alpha_hat);
  CHECK(std::abs(mean_of(est)) < 4.0 * sd_of(est) / std::sqrt(500.0));
}

TEST_CASE("CLS and YW agree on long paths") {
  const PLINARParams p(0.4, 1.0);
  const auto paths = simulate_replicates(200, 10000, p, 500);
  int close = 0;
  for (const auto& path : paths) {
    if (std::abs(fit_cls(path).alpha_hat - fit_yw(path).alpha_hat) < 0.01) ++close;
  }
  CHECK(close >= 190);
}

TEST_CASE("ML is consistent") {
  const auto x = simulate_plinar(10000, PLINARParams(0.5, 2.0), 31);
  MLConfig cfg;
  cfg.starts = 2;
  const auto ml = fit_ml(x, cfg);
  CHECK(std::abs(ml.alpha_hat - 0.5) < 0.05);
  CHECK(std::abs(ml.theta_hat - 2.0) < 0.05 * 2.0 + 0.05);
}

TEST_CASE("gaussian AR fits on the full fixture") {
  const auto x = to_real(fixture(144));
  const auto sel = select_ar_order(x, 3);
  CHECK(sel.best_aic == 1);
  CHECK(sel.best_aicc == 1);
  CHECK(sel.best_bic == 1);
  const auto& ar1 = sel.fits[0];
  CHECK(ar1.aic == doctest::Approx(409.30192).epsilon(1e-7));
  CHECK(ar1.aicc == doctest::Approx(409.47335).epsilon(1e-7));
  CHECK(ar1.bic == doctest::Approx(418.21136).epsilon(1e-7));
  CHECK(ar1.phi[0] == doctest::Approx(0.23432).epsilon(1e-4));
  CHECK(sel.fits[1].aic == doctest::Approx(411.24199).epsilon(1e-7));
  CHECK(sel.fits[2].aic == doctest::Approx(413.23235).epsilon(1e-7));
  for (const auto& f : sel.fits) {
    CHECK(f.aicc >= f.aic);
    CHECK(f.sigma2 > 0.0);
  }
}

TEST_CASE("AR(1) fits on the 115-value training prefix") {
  const auto x = to_real(fixture(115));
  const auto ols = fit_gaussian_ar(x, 1, ARMethod::ols);
  const auto yw = fit_gaussian_ar(x, 1, ARMethod::yw);
  const auto mle = fit_gaussian_ar(x, 1, ARMethod::mle);
  CHECK(ols.phi[0] == doctest::Approx(0.109489).epsilon(1e-5));
  CHECK(ols.mean == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(yw.phi[0] == doctest::Approx(0.109126).epsilon(1e-5));
  CHECK(yw.mean == doctest::Approx(0.495652).epsilon(1e-5));
  CHECK(mle.phi[0] == doctest::Approx(0.108971).epsilon(1e-4));
  CHECK(mle.mean == doctest::Approx(0.494600).epsilon(1e-4));
  CHECK(ols.intercept == doctest::Approx(ols.mean * (1 - ols.phi[0])).epsilon(1e-14));
}

TEST_CASE("AR fits on simulated gaussian data") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> e(0.0, 1.0);
  SUBCASE("white noise has no lag-one coefficient") {
    std::vector<double> x(2000);
    for (auto& v : x) v = e(rng);
    const auto f = fit_gaussian_ar(x, 1, ARMethod::mle);
    CHECK(std::abs(f.phi[0]) < 4.0 / std::sqrt(2000.0));
  }
  SUBCASE("a strong AR(2) is picked by AIC on most replicates") {
    int hits = 0;
    for (int r = 0; r < 40; ++r) {
      std::vector<double> x(400, 0.0);
      for (std::size_t t = 2; t < x.size(); ++t) x[t] = 0.5 * x[t - 1] + 0.3 * x[t - 2] + e(rng);
      if (select_ar_order(x, 3, ARMethod::mle).best_aic == 2) ++hits;
    }
    CHECK(hits >= 28);
  }
}
