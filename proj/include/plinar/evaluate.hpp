#pragma once

#include <span>
#include <string>
#include <vector>

#include "plinar/estimate.hpp"
#include "plinar/forecast.hpp"

namespace plinar {

enum class ModelKind { plinar, marginal, innovation, traditional };

std::string to_string(ModelKind model);
ModelKind parse_model(const std::string& name);

/// AR fitting method standing in for each PLINAR estimator in the
/// traditional model: CLS -> ols, YW -> yw, ML -> mle.
ARMethod traditional_method(Estimator estimator);

struct EvaluationConfig {
  double train_fraction = 0.80;
  int k_max = 3;
  std::vector<ModelKind> models{ModelKind::plinar, ModelKind::marginal, ModelKind::innovation,
                                ModelKind::traditional};
  std::vector<Estimator> estimators{Estimator::cls, Estimator::yw, Estimator::ml};
  double tail = kDefaultTail;
  MLConfig ml;
};

/// m = floor(train_fraction * n); throws invalid-config unless m >= 3 and
/// n - m >= k_max.
int train_length(std::size_t n, const EvaluationConfig& config);

/// One k-step forecast for target t (1-based), made from the observed
/// value at t - k.
struct ForecastRow {
  int target;
  int origin_value;
  int actual;
  double mean;
  int mean_rounded;
  int median;
  int mode;
};

struct ForecastTable {
  ModelKind model;
  Estimator estimator;
  int k;
  std::vector<ForecastRow> rows;  // t = m + k .. n
};

/// A (model, estimator) pair that could not be evaluated.
struct AbortedCell {
  ModelKind model;
  Estimator estimator;
  std::string reason;
};

/// Parameters fitted once on the training prefix.
struct TrainingFits {
  std::vector<EstimationResult> plinar;    // one per configured estimator
  std::vector<ARFitResult> traditional;    // AR(1), same order
};

struct RollingForecasts {
  int m;
  int n;
  TrainingFits fits;
  std::vector<ForecastTable> tables;
  std::vector<AbortedCell> aborted;
};

RollingForecasts rolling_forecasts(std::span<const int> series, const EvaluationConfig& config);

/// Forecasts are aligned to targets t = m + k .. n; actuals is the whole series.
double prmse(std::span<const int> actuals, std::span<const double> forecasts, int k, int m, int n);
double pmad(std::span<const int> actuals, std::span<const double> forecasts, int k, int m, int n);
/// Fraction of exact hits; non-integer-forecast if any forecast is fractional.
double ptp(std::span<const int> actuals, std::span<const double> forecasts, int k, int m, int n);

struct AccuracyCell {
  ModelKind model;
  Estimator estimator;
  int k;
  int targets;
  double prmse;      // against the rounded conditional mean
  double prmse_raw;  // against the unrounded conditional mean
  double pmad;
  double ptp_median;
  double ptp_mode;
  double ptp_mean_rounded;
};

struct AccuracyReport {
  int m;
  int n;
  TrainingFits fits;
  std::vector<AccuracyCell> cells;  // ordered by (estimator, model, k)
  std::vector<AbortedCell> aborted;
};

AccuracyReport accuracy_report(const RollingForecasts& forecasts, std::span<const int> series);
AccuracyReport full_report(std::span<const int> series, const EvaluationConfig& config);

}  // namespace plinar
