#include "plinar/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "plinar/error.hpp"
#include "plinar/gaussian_approx.hpp"

namespace plinar {

namespace {

void check_window(std::span<const int> actuals, std::span<const double> forecasts, int k, int m,
                  int n) {
  if (k < 1 || m < 1 || n != static_cast<int>(actuals.size()) || m + k > n) {
    fail(ErrorCode::invalid_range, "need 1 <= k, m + k <= n = series length");
  }
  if (static_cast<int>(forecasts.size()) != n - m - k + 1) {
    fail(ErrorCode::invalid_range, "expected " + std::to_string(n - m - k + 1) +
                                       " forecasts, got " + std::to_string(forecasts.size()));
  }
}

int actual_at(std::span<const int> actuals, int t) { return actuals[static_cast<std::size_t>(t - 1)]; }

std::vector<double> column(const ForecastTable& table, double (*pick)(const ForecastRow&)) {
  std::vector<double> out;
  out.reserve(table.rows.size());
  for (const auto& r : table.rows) out.push_back(pick(r));
  return out;
}

}  // namespace

std::string to_string(ModelKind model) {
  switch (model) {
    case ModelKind::plinar: return "plinar";
    case ModelKind::marginal: return "marginal";
    case ModelKind::innovation: return "innovation";
    case ModelKind::traditional: return "traditional";
  }
  return "unknown";
}

ModelKind parse_model(const std::string& name) {
  if (name == "plinar") return ModelKind::plinar;
  if (name == "marginal") return ModelKind::marginal;
  if (name == "innovation") return ModelKind::innovation;
  if (name == "traditional") return ModelKind::traditional;
  fail(ErrorCode::invalid_config, "unknown model '" + name + "'");
}

ARMethod traditional_method(Estimator estimator) {
  switch (estimator) {
    case Estimator::cls: return ARMethod::ols;
    case Estimator::yw: return ARMethod::yw;
    case Estimator::ml: return ARMethod::mle;
  }
  return ARMethod::mle;
}

int train_length(std::size_t n, const EvaluationConfig& config) {
  if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
    fail(ErrorCode::invalid_config, "train fraction must lie in (0, 1)");
  }
  if (config.k_max < 1) fail(ErrorCode::invalid_config, "k_max must be >= 1");
  const int m = static_cast<int>(std::floor(config.train_fraction * static_cast<double>(n)));
  if (m < 3) fail(ErrorCode::invalid_config, "training window shorter than 3 values");
  if (static_cast<int>(n) - m < config.k_max) {
    fail(ErrorCode::invalid_config, "test window of " + std::to_string(static_cast<int>(n) - m) +
                                        " values is shorter than k_max = " +
                                        std::to_string(config.k_max));
  }
  return m;
}

RollingForecasts rolling_forecasts(std::span<const int> series, const EvaluationConfig& config) {
  const int n = static_cast<int>(series.size());
  const int m = train_length(series.size(), config);
  if (config.models.empty() || config.estimators.empty()) {
    fail(ErrorCode::invalid_config, "model and estimator sets must be non-empty");
  }
  const auto train = series.first(static_cast<std::size_t>(m));
  const std::vector<double> train_real = to_real(train);

  RollingForecasts out{m, n, {}, {}, {}};
  std::vector<std::string> ar_failure(config.estimators.size());
  for (std::size_t e = 0; e < config.estimators.size(); ++e) {
    const Estimator est = config.estimators[e];
    out.fits.plinar.push_back(fit_plinar(est, train, config.ml));
    const ARMethod method = traditional_method(est);
    try {
      out.fits.traditional.push_back(fit_gaussian_ar(train_real, 1, method));
    } catch (const Error& err) {
      // A failed AR fit only takes out the traditional cells.
      ar_failure[e] = err.what();
      const double nan = std::numeric_limits<double>::quiet_NaN();
      out.fits.traditional.push_back({1, method, {nan}, nan, nan, nan, nan, nan, nan, nan, false});
    }
  }

  for (std::size_t e = 0; e < config.estimators.size(); ++e) {
    const Estimator est = config.estimators[e];
    const EstimationResult& fit = out.fits.plinar[e];
    const ARFitResult& ar = out.fits.traditional[e];
    for (ModelKind model : config.models) {
      std::string reason;
      if (model == ModelKind::traditional) {
        if (!ar_failure[e].empty()) {
          reason = ar_failure[e];
        } else if (!(ar.phi[0] >= 0.0 && ar.phi[0] < 1.0)) {
          reason = "AR(1) coefficient outside [0, 1)";
        }
      } else if (!fit.alpha_in_range) {
        reason = "alpha estimate outside [0, 1)";
      }
      if (!reason.empty()) {
        out.aborted.push_back({model, est, reason});
        continue;
      }
      for (int k = 1; k <= config.k_max; ++k) {
        ForecastTable table{model, est, k, {}};
        for (int t = m + k; t <= n; ++t) {
          const int origin = actual_at(series, t - k);
          ForecastRow row{t, origin, actual_at(series, t), 0.0, 0, 0, 0};
          if (model == ModelKind::plinar) {
            const ForecastDistribution d = forecast_distribution(k, origin, fit.params(), config.tail);
            row.mean = d.mean;
            row.median = d.median;
            row.mode = d.mode;
          } else {
            const GaussianApprox approx =
                model == ModelKind::traditional
                    ? traditional_approx(ar.phi[0], ar.intercept, ar.sigma2)
                    : matched_approx(model == ModelKind::marginal ? GaussianMethod::marginal
                                                                  : GaussianMethod::innovation,
                                     fit.params());
            const PointForecasts pf = gaussian_point_forecasts(k, origin, approx, config.tail);
            row.mean = gaussian_conditional(k, origin, approx).mean;
            row.median = pf.median;
            row.mode = pf.mode;
          }
          row.mean_rounded = round_half_up(row.mean);
          table.rows.push_back(row);
        }
        out.tables.push_back(std::move(table));
      }
    }
  }
  return out;
}

double prmse(std::span<const int> actuals, std::span<const double> forecasts, int k, int m, int n) {
  check_window(actuals, forecasts, k, m, n);
  double ss = 0.0;
  for (int t = m + k; t <= n; ++t) {
    const double r = actual_at(actuals, t) - forecasts[static_cast<std::size_t>(t - m - k)];
    ss += r * r;
  }
  return std::sqrt(ss / (n - m - k + 1));
}

double pmad(std::span<const int> actuals, std::span<const double> forecasts, int k, int m, int n) {
  check_window(actuals, forecasts, k, m, n);
  double s = 0.0;
  for (int t = m + k; t <= n; ++t) {
    s += std::abs(actual_at(actuals, t) - forecasts[static_cast<std::size_t>(t - m - k)]);
  }
  return s / (n - m - k + 1);
}

double ptp(std::span<const int> actuals, std::span<const double> forecasts, int k, int m, int n) {
  check_window(actuals, forecasts, k, m, n);
  int hits = 0;
  for (int t = m + k; t <= n; ++t) {
    const double f = forecasts[static_cast<std::size_t>(t - m - k)];
    if (f != std::floor(f)) fail(ErrorCode::non_integer_forecast, "point forecast is not integral");
    if (f == actual_at(actuals, t)) ++hits;
  }
  return static_cast<double>(hits) / (n - m - k + 1);
}

AccuracyReport accuracy_report(const RollingForecasts& forecasts, std::span<const int> series) {
  AccuracyReport report{forecasts.m, forecasts.n, forecasts.fits, {}, forecasts.aborted};
  const int m = forecasts.m;
  const int n = forecasts.n;
  for (const ForecastTable& table : forecasts.tables) {
    const int k = table.k;
    const auto mean = column(table, [](const ForecastRow& r) { return r.mean; });
    const auto rounded = column(table, [](const ForecastRow& r) { return double(r.mean_rounded); });
    const auto median = column(table, [](const ForecastRow& r) { return double(r.median); });
    const auto mode = column(table, [](const ForecastRow& r) { return double(r.mode); });
    report.cells.push_back({table.model, table.estimator, k, n - m - k + 1,
                            prmse(series, rounded, k, m, n), prmse(series, mean, k, m, n),
                            pmad(series, median, k, m, n), ptp(series, median, k, m, n),
                            ptp(series, mode, k, m, n), ptp(series, rounded, k, m, n)});
  }
  return report;
}

AccuracyReport full_report(std::span<const int> series, const EvaluationConfig& config) {
  return accuracy_report(rolling_forecasts(series, config), series);
}

}  // namespace plinar
