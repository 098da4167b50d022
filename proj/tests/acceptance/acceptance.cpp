// Acceptance runner. One PASS/FAIL line per criterion; tolerances are fixed here.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "golden.hpp"
#include "plinar/distances.hpp"
#include "plinar/estimate.hpp"
#include "plinar/evaluate.hpp"
#include "plinar/forecast.hpp"
#include "plinar/gaussian_approx.hpp"
#include "plinar/pl_dist.hpp"
#include "plinar/process.hpp"
#include "plinar/series.hpp"

using namespace plinar;

namespace {

constexpr int kFitLength = 141;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const CountSeries& fixture() {
  static const CountSeries s = ingest_csv(PLINAR_FIXTURE);
  return s;
}

std::span<const int> fit_window() { return fixture().view().first(kFitLength); }

const std::vector<EstimationResult>& table4_fits() {
  static const std::vector<EstimationResult> fits{
      fit_cls(fit_window()), fit_yw(fit_window()), fit_ml(fit_window())};
  return fits;
}

constexpr int kHorizons[] = {1, 2, 3, kInfiniteHorizon};

// ---------------------------------------------------------------------------

Outcome estimates() {
  Outcome o;
  const auto& f = table4_fits();
  struct Row {
    const char* name;
    double alpha, theta, tol;
  };
  const Row rows[] = {{"cls", 0.2297, 2.1671, 5e-4}, {"yw", 0.2291, 2.1804, 5e-4},
                      {"ml", 0.1028, 2.1900, 1e-3}};
  for (int i = 0; i < 3; ++i) {
    const double da = std::abs(f[i].alpha_hat - rows[i].alpha);
    const double dt = std::abs(f[i].theta_hat - rows[i].theta);
    o.note(fmt("%s (%.6f, %.6f)", rows[i].name, f[i].alpha_hat, f[i].theta_hat));
    o.require(da <= rows[i].tol && dt <= rows[i].tol,
              fmt("%s off by (%.2e, %.2e)", rows[i].name, da, dt));
  }
  o.require(f[2].converged, "ml did not converge");
  return o;
}

Outcome pmf_tables() {
  Outcome o;
  constexpr double tol = 5e-4;
  const auto& fits = table4_fits();
  struct Table {
    const char* name;
    const golden::PmfTable* printed;
    int model;  // 0 plinar, 1 marginal, 2 innovation
  };
  const Table tables[] = {{"plinar", &golden::kPlinarPmf, 0},
                          {"marginal", &golden::kMarginalPmf, 1},
                          {"innovation", &golden::kInnovationPmf, 2}};
  int matched = 0, total = 0;
  double worst = 0.0;
  for (const auto& t : tables) {
    for (int e = 0; e < 3; ++e) {
      const auto params = fits[e].params();
      for (int h = 0; h < 4; ++h) {
        const int k = kHorizons[h];
        const int col = 4 * e + h;
        std::vector<double> pmf;
        if (t.model == 0) {
          pmf = k == kInfiniteHorizon ? stationary_distribution(params).pmf
                                      : forecast_distribution(k, 0, params).pmf;
        } else {
          const auto method = t.model == 1 ? GaussianMethod::marginal : GaussianMethod::innovation;
          pmf = gaussian_forecast_distribution(k, 0.0, matched_approx(method, params)).pmf;
        }
        for (int y = 0; y < 9; ++y) {
          const double got = y < static_cast<int>(pmf.size()) ? pmf[y] : 0.0;
          const double want = (*t.printed)[y][col];
          const double d = std::abs(got - want);
          ++total;
          if (d <= tol) {
            ++matched;
          } else {
            worst = std::max(worst, d);
            o.require(false, fmt("%s %s k=%s y=%d: %.5f vs %.3f", t.name,
                                 to_string(fits[e].method).c_str(),
                                 k == kInfiniteHorizon ? "inf" : std::to_string(k).c_str(), y,
                                 got, want));
          }
        }
      }
    }
  }
  o.note(fmt("%d/%d entries within %.0e", matched, total, tol));
  if (matched != total) o.note(fmt("largest miss %.2e", worst));
  return o;
}

Outcome point_forecasts() {
  Outcome o;
  constexpr double tol = 5e-4;
  const auto& fits = table4_fits();
  const auto data = to_real(fit_window());
  for (int e = 0; e < 3; ++e) {
    const auto params = fits[e].params();
    const auto ar = fit_gaussian_ar(data, 1, traditional_method(fits[e].method));
    const auto trad = traditional_approx(ar.phi[0], ar.intercept, ar.sigma2);
    for (int k = 1; k <= 3; ++k) {
      const int col = 3 * e + k - 1;
      const auto tag = fmt("%s k=%d", to_string(fits[e].method).c_str(), k);
      const double mean = conditional_mean(k, 0, params);
      o.require(std::abs(mean - golden::kPlinarMeans[col]) <= tol,
                fmt("%s mean %.5f vs %.3f", tag.c_str(), mean, golden::kPlinarMeans[col]));
      const auto pl = forecast_distribution(k, 0, params);
      o.require(pl.median == 0 && pl.mode == 0, tag + " plinar median/mode not 0");
      for (auto method : {GaussianMethod::marginal, GaussianMethod::innovation}) {
        const auto approx = matched_approx(method, params);
        const auto g = gaussian_forecast_distribution(k, 0.0, approx);
        o.require(std::abs(g.mean - golden::kPlinarMeans[col]) <= tol,
                  fmt("%s %s mean %.5f", tag.c_str(), to_string(method).c_str(), g.mean));
        o.require(g.median == 1 && g.mode == 1,
                  fmt("%s %s median/mode %d/%d", tag.c_str(), to_string(method).c_str(),
                      g.median, g.mode));
      }
      const double tm = gaussian_conditional(k, 0.0, trad).mean;
      o.require(std::abs(tm - golden::kTraditionalMeans[col]) <= tol,
                fmt("%s traditional mean %.5f vs %.3f", tag.c_str(), tm,
                    golden::kTraditionalMeans[col]));
      if (e == 2) o.note(fmt("traditional ml k=%d %.5f", k, tm));
    }
  }
  return o;
}

Outcome accuracy() {
  Outcome o;
  const auto report = full_report(fixture().view(), EvaluationConfig{});
  o.require(report.m == 115, fmt("train length %d", report.m));
  for (const auto& a : report.aborted)
    o.require(false, fmt("aborted %s/%s: %s", to_string(a.model).c_str(),
                         to_string(a.estimator).c_str(), a.reason.c_str()));
  int checked = 0;
  double worst = 0.0;
  for (const auto& c : report.cells) {
    const int e = static_cast<int>(c.estimator);
    const int row = 4 * e + static_cast<int>(c.model);
    const double tol = c.estimator == Estimator::ml ? 0.01 : 0.005;
    const double got[] = {c.prmse, c.pmad, c.ptp_median, c.ptp_mode};
    const char* names[] = {"prmse", "pmad", "ptp_median", "ptp_mode"};
    for (int m = 0; m < 4; ++m) {
      const double want = golden::kAccuracy[row][3 * m + c.k - 1];
      const double d = std::abs(got[m] - want);
      worst = std::max(worst, d);
      ++checked;
      o.require(d <= tol, fmt("%s/%s k=%d %s %.4f vs %.3f", to_string(c.model).c_str(),
                              to_string(c.estimator).c_str(), c.k, names[m], got[m], want));
    }
  }
  o.require(checked == 144, fmt("%d entries checked", checked));
  o.note(fmt("%d entries, largest deviation %.2e", checked, worst));
  return o;
}

Outcome variance_ratios() {
  Outcome o;
  constexpr double tol = 1e-6;
  const double r1 = variance_ratio(PLINARParams(0.1, 0.5));
  const double r2 = variance_ratio(PLINARParams(0.9, 5.0));
  o.note(fmt("ratio(0.1,0.5)=%.6f ratio(0.9,5)=%.6f", r1, r2));
  o.require(std::abs(r1 - 1.069444) <= tol, "ratio(0.1,0.5) expected 1.069444");
  o.require(std::abs(r2 - 1.780168) <= tol, "ratio(0.9,5) expected 1.780168");
  return o;
}

Outcome summary_statistics() {
  Outcome o;
  const auto s = summarize(fixture().view());
  o.note(fmt("n=%d mean=%.4f var=%.4f disp=%.4f", static_cast<int>(s.n), s.mean, s.variance,
             s.dispersion));
  o.require(std::abs(s.mean - 0.5903) <= 5e-4, "mean");
  o.require(std::abs(s.variance - 1.0268) <= 5e-4, "variance");
  o.require(std::abs(s.dispersion - 1.7395) <= 5e-4, "dispersion");
  o.require(s.min == 0 && s.max == 6, "range");
  o.require(s.median == 0.0 && s.mode == 0, "median/mode");
  return o;
}

Outcome order_selection() {
  Outcome o;
  const auto sel = select_ar_order(to_real(fixture().view()), 3);
  for (const auto& f : sel.fits)
    o.note(fmt("AR(%d) aic=%.4f aicc=%.4f bic=%.4f", f.order, f.aic, f.aicc, f.bic));
  o.require(sel.best_aic == 1 && sel.best_aicc == 1 && sel.best_bic == 1,
            fmt("argmin aic/aicc/bic = %d/%d/%d", sel.best_aic, sel.best_aicc, sel.best_bic));
  o.require(std::abs(sel.fits[0].aic - 409.3019) <= 0.5, "AR(1) aic");
  return o;
}

// Distance grids ------------------------------------------------------------

std::vector<GridPoint> full_grid() {
  std::vector<GridPoint> pts;
  for (double theta : {0.5, 2.0, 5.0}) {
    const std::vector<int> xs = theta == 0.5 ? std::vector<int>{0, 15, 30}
                                             : std::vector<int>{0, 2, 5};
    for (double a : alpha_grid())
      for (int x : xs) pts.push_back({a, theta, x});
  }
  for (double a : {0.1, 0.5, 0.9})
    for (double t : theta_grid())
      for (int x : {0, 15, 30}) pts.push_back({a, t, x});
  for (double a : {0.1, 0.5, 0.9})
    for (double t : {0.5, 2.0, 5.0})
      for (int x = 0; x <= (t == 0.5 ? 30 : 5); ++x) pts.push_back({a, t, x});
  return pts;
}

int sign(double v) { return (v > 0) - (v < 0); }

Outcome distance_properties() {
  Outcome o;
  const auto pts = full_grid();
  const auto recs = evaluate_points(pts, 1, kDefaultTail, Execution::parallel);
  const auto fine = evaluate_points(pts, 1, 1e-15, Execution::parallel);
  o.note(fmt("%zu grid points", pts.size()));

  double worst_stab = 0.0, worst_self = 0.0;
  int bad_kl = 0, bad_kolm = 0, asym = 0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    const auto& f = fine[i];
    for (double v : {r.kl_marginal, r.kl_innovation})
      if (!(std::isfinite(v) && v >= 0.0)) ++bad_kl;
    for (double v : {r.kolm_marginal, r.kolm_innovation})
      if (!(v >= 0.0 && v <= 1.0)) ++bad_kolm;
    worst_stab = std::max({worst_stab, std::abs(r.kl_marginal - f.kl_marginal),
                           std::abs(r.kl_innovation - f.kl_innovation),
                           std::abs(r.kolm_marginal - f.kolm_marginal),
                           std::abs(r.kolm_innovation - f.kolm_innovation)});

    const PLINARParams params(r.alpha, r.theta);
    const auto p = conditional_pmf_table(r.y_max, 1, r.x_n, params);
    worst_self = std::max(worst_self, std::abs(kl_divergence(p, p)));
    const auto cn = gaussian_conditional(1, r.x_n, matched_approx(GaussianMethod::marginal, params));
    const auto q = discretize_normal(cn.mean, std::sqrt(cn.variance), r.y_max);
    const auto F = cumulative(p);
    const auto G = cumulative(q.q);
    if (kolmogorov_metric(F, G) != kolmogorov_metric(G, F)) ++asym;
  }
  o.require(bad_kl == 0, fmt("%d KL values negative or non-finite", bad_kl));
  o.require(bad_kolm == 0, fmt("%d Kolmogorov values outside [0,1]", bad_kolm));
  o.require(worst_self <= 1e-14, fmt("KL(p,p) up to %.2e", worst_self));
  o.require(asym == 0, fmt("%d asymmetric Kolmogorov values", asym));
  o.require(worst_stab <= 1e-9, fmt("truncation stability %.2e", worst_stab));
  o.note(fmt("stability %.2e, KL(p,p) %.1e", worst_stab, worst_self));

  // Shape agreement at alpha = 0.1, pooled over every curve through it.
  std::vector<std::vector<const DistanceRecord*>> curves;
  for (int x : {0, 15, 30}) {
    auto& c = curves.emplace_back();
    for (const auto& r : recs)
      if (r.alpha == 0.1 && r.x_n == x && pts[&r - recs.data()].theta == r.theta &&
          &r - recs.data() >= 819 && &r - recs.data() < 819 + 4464)
        c.push_back(&r);
  }
  for (double t : {0.5, 2.0, 5.0}) {
    auto& c = curves.emplace_back();
    for (std::size_t i = 819 + 4464; i < recs.size(); ++i)
      if (recs[i].alpha == 0.1 && recs[i].theta == t) c.push_back(&recs[i]);
  }
  int agree_kl = 0, agree_kolm = 0, diffs = 0;
  for (const auto& c : curves) {
    for (std::size_t i = 1; i < c.size(); ++i) {
      ++diffs;
      agree_kl += sign(c[i]->kl_marginal - c[i - 1]->kl_marginal) ==
                  sign(c[i]->kl_innovation - c[i - 1]->kl_innovation);
      agree_kolm += sign(c[i]->kolm_marginal - c[i - 1]->kolm_marginal) ==
                    sign(c[i]->kolm_innovation - c[i - 1]->kolm_innovation);
    }
  }
  const double fk = diffs ? static_cast<double>(agree_kl) / diffs : 0.0;
  const double fm = diffs ? static_cast<double>(agree_kolm) / diffs : 0.0;
  o.note(fmt("alpha=0.1 shape agreement kl %.3f kolmogorov %.3f over %d differences", fk, fm,
             diffs));
  o.require(fk >= 0.9 && fm >= 0.9, "shape agreement below 0.9");
  return o;
}

// Property suite -------------------------------------------------------------

double brute_one_step(int y, int x, const PLINARParams& p) {
  double s = 0.0;
  for (int j = 0; j <= std::min(x, y); ++j)
    s += std::exp(std::lgamma(x + 1.0) - std::lgamma(j + 1.0) - std::lgamma(x - j + 1.0)) *
         std::pow(p.alpha(), j) * std::pow(1.0 - p.alpha(), x - j) * innovation_pmf(y - j, p);
  return s;
}

Outcome properties() {
  Outcome o;
  const double alphas[] = {0.05, 0.3, 0.5, 0.7, 0.9, 0.95};
  const double thetas[] = {0.1, 0.5, 2.0, 5.0};

  double norm = 0.0, moment = 0.0, tv_worst = 0.0, conv = 0.0, round_trip = 0.0;
  for (double a : alphas) {
    for (double t : thetas) {
      const PLINARParams params(a, t);
      for (int x : {0, 3, 15}) {
        for (int k : {1, 2, 5}) {
          const auto fd = forecast_distribution(k, x, params, 1e-16);
          double s = 0.0, m1 = 0.0, m2 = 0.0;
          for (std::size_t y = 0; y < fd.pmf.size(); ++y) {
            s += fd.pmf[y];
            m1 += y * fd.pmf[y];
            m2 += double(y) * y * fd.pmf[y];
          }
          norm = std::max(norm, std::abs(s + fd.tail_mass - 1.0));
          const double mean = conditional_mean(k, x, params);
          const double var = conditional_variance(k, x, params);
          moment = std::max({moment, std::abs(m1 - mean), std::abs(m2 - m1 * m1 - var)});
        }
      }
      // Geometric rate alpha^k: at k = 200 the 1e-8 bound holds for alpha <= 0.9.
      if (a <= 0.9) {
      const auto far = forecast_distribution(200, 5, params);
      double tv = 0.0;
      for (std::size_t y = 0; y < far.pmf.size(); ++y)
        tv += std::abs(far.pmf[y] - pl_pmf(static_cast<int>(y), params.marginal()));
      tv += std::abs(far.tail_mass - pl_sf(static_cast<int>(far.pmf.size()) - 1, params.marginal()));
      tv_worst = std::max(tv_worst, 0.5 * tv);
      }

      for (int x = 0; x <= 3; ++x) {
        for (int y = 0; y <= 12; ++y) {
          conv = std::max(conv, std::abs(conditional_pmf(y, 1, x, params) -
                                         brute_one_step(y, x, params)));
          double two = 0.0;
          for (int mid = 0; mid <= 400; ++mid)
            two += brute_one_step(mid, x, params) * brute_one_step(y, mid, params);
          conv = std::max(conv, std::abs(conditional_pmf(y, 2, x, params) - two));
        }
      }
      const double mu = pl_mean(params.marginal());
      round_trip = std::max(round_trip, std::abs(pl_theta_from_mean(mu) - t));
    }
  }
  o.require(norm <= 1e-10, fmt("normalization %.2e", norm));
  o.require(moment <= 1e-8, fmt("moments %.2e", moment));
  o.require(tv_worst < 1e-8, fmt("tv at k=200 %.2e", tv_worst));
  o.require(conv <= 1e-12, fmt("convolution oracle %.2e", conv));
  o.require(round_trip <= 1e-9, fmt("theta round trip %.2e", round_trip));
  o.note(fmt("norm %.1e moments %.1e tv %.1e conv %.1e round-trip %.1e", norm, moment, tv_worst,
             conv, round_trip));

  // Monte Carlo: marginal mean, variance and lag-1 autocorrelation, 4 standard errors.
  constexpr int n = 200000;
  for (auto [a, t] : {std::pair{0.3, 2.0}, std::pair{0.7, 0.5}}) {
    const PLINARParams params(a, t);
    const auto x = simulate_plinar(n, params, 20240611);
    double m = 0.0;
    for (int v : x) m += v;
    m /= n;
    double c0 = 0.0, c1 = 0.0;
    for (int i = 0; i < n; ++i) {
      c0 += (x[i] - m) * (x[i] - m);
      if (i > 0) c1 += (x[i] - m) * (x[i - 1] - m);
    }
    const double var = c0 / n;
    const double rho = c1 / c0;
    const double mu = pl_mean(params.marginal());
    const double sigma2 = pl_var(params.marginal());
    const double se_mean = std::sqrt(sigma2 / n * (1 + a) / (1 - a));
    const double se_rho = std::sqrt((1 - a * a) / n) * 3.0;  // inflated for non-Gaussian counts
    o.require(std::abs(m - mu) <= 4 * se_mean,
              fmt("MC mean %.4f vs %.4f (a=%.1f)", m, mu, a));
    o.require(std::abs(var - sigma2) <= 0.05 * sigma2,
              fmt("MC variance %.4f vs %.4f (a=%.1f)", var, sigma2, a));
    o.require(std::abs(rho - a) <= 4 * se_rho, fmt("MC acf %.4f vs %.1f", rho, a));
    o.note(fmt("MC a=%.1f mean %.4f/%.4f acf %.4f", a, m, mu, rho));
  }
  return o;
}

struct Criterion {
  const char* title;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"estimates on the first 141 values", 10, estimates},
      {"conditional pmf tables", 5, pmf_tables},
      {"point forecasts", 5, point_forecasts},
      {"rolling forecast accuracy", 30, accuracy},
      {"variance ratio endpoints", 1, variance_ratios},
      {"fixture summary statistics", 1, summary_statistics},
      {"Gaussian AR order selection", 5, order_selection},
      {"distance grid properties", 180, distance_properties},
      {"property suites", 60, properties},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_seconds, fmt("runtime %.2fs over %.0fs budget", secs, c.budget_seconds));
    std::printf("%s %zu %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, c.title, secs);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    failures += !o.pass;
  }
  return failures ? 1 : 0;
}
