#include <doctest.h>

#include <algorithm>
#include <vector>

#include "plinar/error.hpp"
#include "plinar/evaluate.hpp"
#include "plinar/series.hpp"

using namespace plinar;

namespace {

const std::vector<int>& fixture() {
  static const std::vector<int> v = ingest_csv(PLINAR_FIXTURE).values;
  return v;
}

const AccuracyCell& cell(const AccuracyReport& r, Estimator e, ModelKind m, int k) {
  const auto it = std::find_if(r.cells.begin(), r.cells.end(), [&](const AccuracyCell& c) {
    return c.estimator == e && c.model == m && c.k == k;
  });
  REQUIRE(it != r.cells.end());
  return *it;
}

}  // namespace

TEST_CASE("train length") {
  EvaluationConfig cfg;
  CHECK(train_length(144, cfg) == 115);
  cfg.train_fraction = 0.99;
  try {
    train_length(144, cfg);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_config);
  }
  cfg.train_fraction = 0.01;
  CHECK_THROWS_AS(train_length(144, cfg), Error);
}

TEST_CASE("metric formulas") {
  const std::vector<int> actual{0, 1, 2, 3, 4, 5};
  // m = 3, k = 1: targets t = 4..6 hold 3, 4, 5.
  const std::vector<double> exact{3, 4, 5};
  CHECK(prmse(actual, exact, 1, 3, 6) == 0.0);
  CHECK(pmad(actual, exact, 1, 3, 6) == 0.0);
  CHECK(ptp(actual, exact, 1, 3, 6) == 1.0);
  const std::vector<double> off{4, 4, 3};
  CHECK(prmse(actual, off, 1, 3, 6) == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(pmad(actual, off, 1, 3, 6) == doctest::Approx(1.0));
  CHECK(ptp(actual, off, 1, 3, 6) == doctest::Approx(1.0 / 3.0));
  const std::vector<double> frac{3.5, 4, 5};
  CHECK_THROWS_AS(ptp(actual, frac, 1, 3, 6), Error);
  CHECK_THROWS_AS(prmse(actual, exact, 2, 3, 6), Error);
  CHECK_THROWS_AS(pmad(actual, exact, 1, 3, 7), Error);
}

TEST_CASE("fixture report structure") {
  const auto report = full_report(fixture(), {});
  CHECK(report.m == 115);
  CHECK(report.n == 144);
  CHECK(report.cells.size() == 36);
  CHECK(report.aborted.empty());
  for (const auto& c : report.cells) {
    CHECK(c.targets == 144 - 115 - c.k + 1);
    for (double v : {c.ptp_median, c.ptp_mode, c.ptp_mean_rounded}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
  for (Estimator e : {Estimator::cls, Estimator::yw, Estimator::ml}) {
    for (int k = 1; k <= 3; ++k) {
      const auto& base = cell(report, e, ModelKind::plinar, k);
      for (ModelKind m : {ModelKind::marginal, ModelKind::innovation}) {
        CHECK(cell(report, e, m, k).prmse == base.prmse);
        CHECK(cell(report, e, m, k).prmse_raw == base.prmse_raw);
      }
    }
  }
  const auto& c = cell(report, Estimator::cls, ModelKind::plinar, 1);
  CHECK(c.prmse == doctest::Approx(1.597).epsilon(0.0005));
  CHECK(c.pmad == doctest::Approx(0.931).epsilon(0.0005));
  CHECK(c.ptp_median == doctest::Approx(15.0 / 29.0));
}

TEST_CASE("model order in the config does not change the cells") {
  EvaluationConfig a;
  a.estimators = {Estimator::cls};
  EvaluationConfig b = a;
  std::reverse(b.models.begin(), b.models.end());
  const auto ra = full_report(fixture(), a);
  const auto rb = full_report(fixture(), b);
  for (const auto& c : ra.cells) {
    const auto& d = cell(rb, c.estimator, c.model, c.k);
    CHECK(c.prmse == d.prmse);
    CHECK(c.pmad == d.pmad);
    CHECK(c.ptp_mode == d.ptp_mode);
  }
}

TEST_CASE("rolling forecasts condition on observed values") {
  EvaluationConfig cfg;
  cfg.estimators = {Estimator::yw};
  cfg.models = {ModelKind::plinar};
  const auto rf = rolling_forecasts(fixture(), cfg);
  REQUIRE(rf.tables.size() == 3);
  for (const auto& table : rf.tables) {
    CHECK(table.rows.front().target == 115 + table.k);
    CHECK(table.rows.back().target == 144);
    for (const auto& row : table.rows) {
      CHECK(row.origin_value == fixture()[static_cast<std::size_t>(row.target - table.k - 1)]);
      CHECK(row.actual == fixture()[static_cast<std::size_t>(row.target - 1)]);
    }
  }
}

TEST_CASE("all-zero test segment is hit by the PLINAR median everywhere") {
  std::vector<int> x = fixture();
  x.resize(115);
  for (int i = 0; i < 29; ++i) x.push_back(0);
  EvaluationConfig cfg;
  cfg.estimators = {Estimator::cls};
  cfg.models = {ModelKind::plinar};
  const auto r = full_report(x, cfg);
  for (const auto& c : r.cells) {
    CHECK(c.ptp_median == 1.0);
    CHECK(c.pmad == 0.0);
  }
}

TEST_CASE("median PMAD bounded by mode PMAD plus disagreement rate") {
  const auto rf = rolling_forecasts(fixture(), {});
  for (const auto& table : rf.tables) {
    double med = 0.0, mode = 0.0, differ = 0.0;
    for (const auto& row : table.rows) {
      med += std::abs(row.actual - row.median);
      mode += std::abs(row.actual - row.mode);
      differ += row.median != row.mode;
    }
    const double n = static_cast<double>(table.rows.size());
    CHECK(med / n <= mode / n + differ / n + 1e-12);
  }
}

TEST_CASE("out-of-range estimates abort their cells") {
  std::vector<int> x;
  for (int i = 0; i < 60; ++i) x.push_back(i % 2);
  EvaluationConfig cfg;
  cfg.estimators = {Estimator::cls};
  const auto r = full_report(x, cfg);
  CHECK(r.aborted.size() == 4);
  CHECK(r.cells.empty());
  CHECK_FALSE(r.aborted.front().reason.empty());
}
