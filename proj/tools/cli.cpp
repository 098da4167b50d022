#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cmath>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "plinar/distances.hpp"
#include "plinar/error.hpp"
#include "plinar/estimate.hpp"
#include "plinar/evaluate.hpp"
#include "plinar/forecast.hpp"
#include "plinar/gaussian_approx.hpp"
#include "plinar/series.hpp"

namespace plinar::cli {

namespace {

using nlohmann::json;

struct Globals {
  std::string input = PLINAR_DEFAULT_INPUT;
  std::string column;
  std::string output;
  std::optional<std::uint64_t> seed;
  double tail = kDefaultTail;
  std::optional<std::size_t> first;
  int ml_starts = 5;
  double ml_tolerance = 1e-8;
};

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string horizon_label(int k) { return k == kInfiniteHorizon ? "inf" : std::to_string(k); }

json globals_json(const Globals& g) {
  json j;
  j["input"] = g.input;
  j["column"] = g.column;
  j["tail"] = g.tail;
  j["first"] = g.first ? json(*g.first) : json(nullptr);
  j["seed"] = g.seed ? json(*g.seed) : json(nullptr);
  return j;
}

MLConfig ml_config(const Globals& g) {
  MLConfig c;
  c.starts = g.ml_starts;
  c.tolerance = g.ml_tolerance;
  return c;
}

CountSeries load_series(const Globals& g) {
  CountSeries s = ingest_csv(g.input, g.column);
  if (g.first) {
    if (*g.first > s.size()) {
      fail(ErrorCode::invalid_config, "--first " + std::to_string(*g.first) + " exceeds the " +
                                          std::to_string(s.size()) + " values in " + g.input);
    }
    s = s.prefix(*g.first);
  }
  return s;
}

void check_tail(double tail) {
  if (!(tail > 0.0 && tail < 1e-3)) fail(ErrorCode::invalid_config, "--tail must lie in (0, 1e-3)");
}

// Writes to --output when given, else to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : target_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) fail(ErrorCode::invalid_config, "cannot write " + path);
      target_ = &file_;
    }
  }
  std::ostream& stream() { return *target_; }

 private:
  std::ofstream file_;
  std::ostream* target_;
};

void emit_json(const Globals& g, std::ostream& out, const json& config, const json& results,
               const json& diagnostics) {
  json doc;
  doc["config"] = config;
  doc["results"] = results;
  doc["diagnostics"] = diagnostics;
  Sink sink(g.output, out);
  sink.stream() << doc.dump(2) << '\n';
}

std::vector<std::string> echo_lines(const json& config) {
  std::vector<std::string> lines;
  for (const auto& [key, value] : config.items()) lines.push_back(key + "=" + value.dump());
  return lines;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  double alpha = 0.5;
  double theta = 2.0;
  int n = 100;
  int burn_in = 0;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
  if (!g.seed) fail(ErrorCode::invalid_config, "simulate needs an explicit --seed");
  if (a.n < 1) fail(ErrorCode::invalid_config, "--n must be >= 1");
  if (a.burn_in < 0) fail(ErrorCode::invalid_config, "--burn-in must be >= 0");
  const PLINARParams params(a.alpha, a.theta);
  CountSeries s;
  s.values = simulate_plinar(a.n, params, *g.seed, a.burn_in);
  for (int t = 1; t <= a.n; ++t) s.labels.push_back(std::to_string(t));
  json config;
  config["command"] = "simulate";
  config["alpha"] = a.alpha;
  config["theta"] = a.theta;
  config["n"] = a.n;
  config["burn_in"] = a.burn_in;
  config["seed"] = *g.seed;
  const auto lines = echo_lines(config);
  Sink sink(g.output, out);
  write_csv(sink.stream(), s, lines);
  return 0;
}

// --------------------------------------------------------------------- fit

json estimation_json(const EstimationResult& r) {
  json j;
  j["alpha_hat"] = r.alpha_hat;
  j["theta_hat"] = r.theta_hat;
  j["mu_hat"] = r.mu_hat;
  j["loglik"] = r.loglik;
  j["alpha_in_range"] = r.alpha_in_range;
  if (r.method == Estimator::ml) {
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["boundary"] = r.boundary;
    j["start_logliks"] = r.start_logliks;
  }
  return j;
}

json ar_json(const ARFitResult& f) {
  json j;
  j["order"] = f.order;
  j["method"] = to_string(f.method);
  j["phi"] = f.phi;
  j["mean"] = f.mean;
  j["intercept"] = f.intercept;
  j["sigma2"] = f.sigma2;
  j["loglik"] = f.loglik;
  j["aic"] = f.aic;
  j["aicc"] = f.aicc;
  j["bic"] = f.bic;
  j["converged"] = f.converged;
  return j;
}

int cmd_fit(const Globals& g, const std::vector<std::string>& methods, std::ostream& out) {
  const CountSeries s = load_series(g);
  json config = globals_json(g);
  config["command"] = "fit";
  config["methods"] = methods;
  json results = json::object();
  for (const auto& m : methods) {
    results[m] = estimation_json(fit_plinar(parse_estimator(m), s.view(), ml_config(g)));
  }
  json diagnostics;
  diagnostics["n"] = s.size();
  emit_json(g, out, config, results, diagnostics);
  return 0;
}

// ---------------------------------------------------------------- forecast

struct ForecastArgs {
  std::vector<std::string> models{"plinar"};
  std::vector<std::string> estimates{"cls"};
  std::optional<double> alpha;
  std::optional<double> theta;
  std::vector<int> xn{0};
  std::vector<std::string> k{"1", "2", "3", "inf"};
  std::string format = "csv";
  std::optional<int> y_max;
};

std::vector<int> parse_horizons(const std::vector<std::string>& ks) {
  std::vector<int> out;
  for (const auto& k : ks) {
    if (k == "inf") {
      out.push_back(kInfiniteHorizon);
      continue;
    }
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(k, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != k.size() || v < 1) fail(ErrorCode::invalid_config, "bad horizon '" + k + "'");
    out.push_back(v);
  }
  return out;
}

struct ModelInstance {
  std::string model;
  std::string estimator;
  json parameters;
  std::optional<PLINARParams> plinar;
  std::optional<GaussianApprox> gaussian;
};

ForecastDistribution model_distribution(const ModelInstance& mi, int k, int x_n, double tail,
                                        std::optional<int> y_max) {
  ForecastDistribution d;
  if (mi.plinar) {
    d = k == kInfiniteHorizon ? stationary_distribution(*mi.plinar, tail)
                              : forecast_distribution(k, x_n, *mi.plinar, tail);
    if (y_max) {
      d.pmf.resize(static_cast<std::size_t>(*y_max) + 1);
      for (int y = 0; y <= *y_max; ++y) {
        d.pmf[static_cast<std::size_t>(y)] =
            k == kInfiniteHorizon ? pl_pmf(y, mi.plinar->marginal())
                                  : conditional_pmf(y, k, x_n, *mi.plinar);
      }
    }
  } else {
    d = gaussian_forecast_distribution(k, x_n, *mi.gaussian, tail);
    if (y_max) {
      d.pmf = discretize_normal(d.mean, std::sqrt(d.variance), *y_max).q;
    }
  }
  d.origin = x_n;
  return d;
}

int cmd_forecast(const Globals& g, const ForecastArgs& a, std::ostream& out) {
  check_tail(g.tail);
  if (a.format != "csv" && a.format != "json") fail(ErrorCode::invalid_config, "--format is csv or json");
  if (a.alpha.has_value() != a.theta.has_value()) {
    fail(ErrorCode::invalid_config, "--alpha and --theta go together");
  }
  if (a.y_max && *a.y_max < 0) fail(ErrorCode::invalid_config, "--y-max must be >= 0");
  for (int x : a.xn) {
    if (x < 0) fail(ErrorCode::invalid_config, "--xn values must be >= 0");
  }
  const std::vector<int> horizons = parse_horizons(a.k);

  std::optional<CountSeries> series;
  std::vector<ModelInstance> instances;
  const std::vector<std::string> estimators =
      a.alpha ? std::vector<std::string>{"given"} : a.estimates;
  for (const auto& est : estimators) {
    std::optional<EstimationResult> fit;
    if (!a.alpha) {
      if (!series) series = load_series(g);
      fit = fit_plinar(parse_estimator(est), series->view(), ml_config(g));
    }
    for (const auto& model_name : a.models) {
      const ModelKind model = parse_model(model_name);
      ModelInstance mi{model_name, est, json::object(), std::nullopt, std::nullopt};
      if (model == ModelKind::traditional) {
        if (a.alpha) fail(ErrorCode::invalid_config, "the traditional model is fitted from --input");
        const ARFitResult ar = fit_gaussian_ar(to_real(series->view()), 1,
                                               traditional_method(parse_estimator(est)));
        mi.gaussian = traditional_approx(ar.phi[0], ar.intercept, ar.sigma2);
        mi.parameters["ar"] = ar_json(ar);
      } else {
        const PLINARParams params =
            a.alpha ? PLINARParams(*a.alpha, *a.theta) : fit->params();
        mi.parameters["alpha"] = params.alpha();
        mi.parameters["theta"] = params.theta();
        if (model == ModelKind::plinar) {
          mi.plinar = params;
        } else {
          mi.gaussian = matched_approx(
              model == ModelKind::marginal ? GaussianMethod::marginal : GaussianMethod::innovation,
              params);
        }
      }
      if (mi.gaussian) {
        mi.parameters["phi"] = mi.gaussian->phi;
        mi.parameters["mu_e"] = mi.gaussian->mu_e;
        mi.parameters["sigma2_e"] = mi.gaussian->sigma2_e;
      }
      instances.push_back(std::move(mi));
    }
  }

  json config = globals_json(g);
  config["command"] = "forecast";
  config["models"] = a.models;
  config["estimates"] = estimators;
  config["xn"] = a.xn;
  config["k"] = a.k;
  config["y_max"] = a.y_max ? json(*a.y_max) : json(nullptr);
  if (a.alpha) {
    config["alpha"] = *a.alpha;
    config["theta"] = *a.theta;
  }

  if (a.format == "json") {
    json results = json::array();
    for (const auto& mi : instances) {
      for (int x : a.xn) {
        for (int k : horizons) {
          const ForecastDistribution d = model_distribution(mi, k, x, g.tail, a.y_max);
          PointForecasts pf = d.point_forecasts();
          if (mi.gaussian && mi.gaussian->method == GaussianMethod::traditional) {
            pf.median = pf.mode = pf.mean_rounded;
          }
          json r;
          r["model"] = mi.model;
          r["estimator"] = mi.estimator;
          r["parameters"] = mi.parameters;
          r["x_n"] = x;
          r["k"] = horizon_label(k);
          r["pmf"] = d.pmf;
          r["mean"] = d.mean;
          r["variance"] = d.variance;
          r["mean_rounded"] = pf.mean_rounded;
          r["median"] = pf.median;
          r["mode"] = pf.mode;
          r["tail_mass"] = d.tail_mass;
          results.push_back(r);
        }
      }
    }
    json diagnostics;
    diagnostics["n"] = series ? json(series->size()) : json(nullptr);
    emit_json(g, out, config, results, diagnostics);
    return 0;
  }

  Sink sink(g.output, out);
  std::ostream& os = sink.stream();
  for (const auto& line : echo_lines(config)) os << "# " << line << '\n';
  os << "model,estimator,x_n,k,y,pmf\n";
  for (const auto& mi : instances) {
    for (int x : a.xn) {
      for (int k : horizons) {
        const ForecastDistribution d = model_distribution(mi, k, x, g.tail, a.y_max);
        for (std::size_t y = 0; y < d.pmf.size(); ++y) {
          os << mi.model << ',' << mi.estimator << ',' << x << ',' << horizon_label(k) << ',' << y
             << ',' << num(d.pmf[y]) << '\n';
        }
      }
    }
  }
  return 0;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string vary;
  std::optional<double> alpha;
  std::optional<double> theta;
  std::vector<int> xn;
  std::optional<int> xn_max;
  int k = 1;
  bool serial = false;
};

int cmd_sweep(const Globals& g, const SweepArgs& a, std::ostream& out) {
  check_tail(g.tail);
  const Execution exec = a.serial ? Execution::serial : Execution::parallel;
  std::vector<DistanceRecord> records;
  json config = globals_json(g);
  config["command"] = "sweep";
  config["vary"] = a.vary;
  config["k"] = a.k;
  auto need = [&](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::invalid_config, "--vary " + a.vary + " needs " + what);
  };
  if (a.vary == "alpha") {
    need(a.theta.has_value() && !a.xn.empty(), "--theta and --xn");
    config["theta"] = *a.theta;
    config["xn"] = a.xn;
    records = sweep_alpha(*a.theta, a.xn, a.k, g.tail, exec);
  } else if (a.vary == "theta") {
    need(a.alpha.has_value() && !a.xn.empty(), "--alpha and --xn");
    config["alpha"] = *a.alpha;
    config["xn"] = a.xn;
    records = sweep_theta(*a.alpha, a.xn, a.k, g.tail, exec);
  } else if (a.vary == "xn") {
    need(a.alpha.has_value() && a.theta.has_value() && a.xn_max.has_value(),
         "--alpha, --theta and --xn-max");
    config["alpha"] = *a.alpha;
    config["theta"] = *a.theta;
    config["xn_max"] = *a.xn_max;
    records = sweep_xn(*a.alpha, *a.theta, *a.xn_max, a.k, g.tail, exec);
  } else {
    fail(ErrorCode::invalid_config, "--vary is alpha, theta or xn");
  }
  Sink sink(g.output, out);
  std::ostream& os = sink.stream();
  for (const auto& line : echo_lines(config)) os << "# " << line << '\n';
  os << "alpha,theta,x_n,k,kl_marginal,kl_innovation,kolm_marginal,kolm_innovation,y_max\n";
  for (const auto& r : records) {
    os << num(r.alpha) << ',' << num(r.theta) << ',' << r.x_n << ',' << r.k << ','
       << num(r.kl_marginal) << ',' << num(r.kl_innovation) << ',' << num(r.kolm_marginal) << ','
       << num(r.kolm_innovation) << ',' << r.y_max << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  double train_fraction = 0.8;
  int k_max = 3;
  std::vector<std::string> models{"plinar", "marginal", "innovation", "traditional"};
  std::vector<std::string> methods{"cls", "yw", "ml"};
};

int cmd_evaluate(const Globals& g, const EvaluateArgs& a, std::ostream& out) {
  check_tail(g.tail);
  const CountSeries s = load_series(g);
  EvaluationConfig cfg;
  cfg.train_fraction = a.train_fraction;
  cfg.k_max = a.k_max;
  cfg.models.clear();
  for (const auto& m : a.models) cfg.models.push_back(parse_model(m));
  cfg.estimators.clear();
  for (const auto& m : a.methods) cfg.estimators.push_back(parse_estimator(m));
  cfg.tail = g.tail;
  cfg.ml = ml_config(g);
  const AccuracyReport report = full_report(s.view(), cfg);

  json config = globals_json(g);
  config["command"] = "evaluate";
  config["train_fraction"] = a.train_fraction;
  config["k_max"] = a.k_max;
  config["models"] = a.models;
  config["methods"] = a.methods;

  json results;
  results["m"] = report.m;
  results["n"] = report.n;
  json estimates = json::object();
  for (std::size_t i = 0; i < cfg.estimators.size(); ++i) {
    json e;
    e["plinar"] = estimation_json(report.fits.plinar[i]);
    e["traditional"] = ar_json(report.fits.traditional[i]);
    estimates[to_string(cfg.estimators[i])] = e;
  }
  results["estimates"] = estimates;
  json cells = json::array();
  for (const auto& c : report.cells) {
    json j;
    j["model"] = to_string(c.model);
    j["estimator"] = to_string(c.estimator);
    j["k"] = c.k;
    j["targets"] = c.targets;
    j["prmse"] = c.prmse;
    j["prmse_raw"] = c.prmse_raw;
    j["pmad"] = c.pmad;
    j["ptp_median"] = c.ptp_median;
    j["ptp_mode"] = c.ptp_mode;
    j["ptp_mean_rounded"] = c.ptp_mean_rounded;
    cells.push_back(j);
  }
  results["cells"] = cells;
  json diagnostics;
  json aborted = json::array();
  for (const auto& ab : report.aborted) {
    aborted.push_back({{"model", to_string(ab.model)},
                       {"estimator", to_string(ab.estimator)},
                       {"reason", ab.reason}});
  }
  diagnostics["aborted"] = aborted;
  diagnostics["parameters_frozen"] = true;
  emit_json(g, out, config, results, diagnostics);
  return 0;
}

// ---------------------------------------------------------------- describe

int cmd_describe(const Globals& g, int p_max, const std::string& ar_method, std::ostream& out) {
  const CountSeries s = load_series(g);
  const SeriesSummary sum = summarize(s.view());
  const OrderSelection sel = select_ar_order(to_real(s.view()), p_max, parse_ar_method(ar_method));
  json config = globals_json(g);
  config["command"] = "describe";
  config["p_max"] = p_max;
  config["ar_method"] = ar_method;
  json summary;
  summary["n"] = sum.n;
  summary["sum"] = sum.sum;
  summary["mean"] = sum.mean;
  summary["variance"] = sum.variance;
  summary["dispersion"] = sum.dispersion;
  summary["min"] = sum.min;
  summary["max"] = sum.max;
  summary["median"] = sum.median;
  summary["mode"] = sum.mode;
  json orders = json::array();
  for (const auto& f : sel.fits) orders.push_back(ar_json(f));
  json results;
  results["summary"] = summary;
  results["ar_orders"] = orders;
  results["best"] = {{"aic", sel.best_aic}, {"aicc", sel.best_aicc}, {"bic", sel.best_bic}};
  emit_json(g, out, config, results, json::object());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Poisson-Lindley INAR(1) forecasting toolkit", "plinar"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--input", g.input, "CSV file of counts (defaults to the bundled fixture)");
  app.add_option("--column", g.column, "column name or 1-based index");
  app.add_option("--output", g.output, "write here instead of stdout");
  app.add_option("--seed", g.seed, "RNG seed (required by simulate)");
  app.add_option("--tail", g.tail, "truncation tail mass")->capture_default_str();
  app.add_option("--first", g.first, "use only the first N values of the input");
  app.add_option("--ml-starts", g.ml_starts, "ML multistart count")->capture_default_str();
  app.add_option("--ml-tol", g.ml_tolerance, "ML simplex size tolerance")->capture_default_str();

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "simulate a PLINAR(1) path as CSV");
  sim->add_option("--alpha", sim_args.alpha)->capture_default_str();
  sim->add_option("--theta", sim_args.theta)->capture_default_str();
  sim->add_option("--n", sim_args.n)->capture_default_str();
  sim->add_option("--burn-in", sim_args.burn_in)->capture_default_str();

  std::vector<std::string> fit_methods{"cls", "yw", "ml"};
  auto* fit = app.add_subcommand("fit", "estimate alpha and theta (JSON)");
  fit->add_option("--methods", fit_methods)->delimiter(',')->capture_default_str();

  ForecastArgs fc_args;
  auto* fc = app.add_subcommand("forecast", "conditional k-step PMFs and point forecasts");
  fc->add_option("--model", fc_args.models, "plinar, marginal, innovation, traditional")
      ->delimiter(',');
  fc->add_option("--estimates", fc_args.estimates, "cls, yw, ml")->delimiter(',');
  fc->add_option("--alpha", fc_args.alpha, "use these parameters instead of fitting");
  fc->add_option("--theta", fc_args.theta);
  fc->add_option("--xn", fc_args.xn, "origin values")->delimiter(',');
  fc->add_option("--k", fc_args.k, "horizons; 'inf' for the stationary law")->delimiter(',');
  fc->add_option("--format", fc_args.format, "csv or json")->capture_default_str();
  fc->add_option("--y-max", fc_args.y_max, "tabulate y = 0..y_max instead of the full support");

  SweepArgs sw_args;
  auto* sw = app.add_subcommand("sweep", "distance sweeps over alpha, theta or x_n (CSV)");
  sw->add_option("--vary", sw_args.vary, "alpha, theta or xn")->required();
  sw->add_option("--alpha", sw_args.alpha);
  sw->add_option("--theta", sw_args.theta);
  sw->add_option("--xn", sw_args.xn)->delimiter(',');
  sw->add_option("--xn-max", sw_args.xn_max);
  sw->add_option("--k", sw_args.k)->capture_default_str();
  sw->add_flag("--serial", sw_args.serial, "single-threaded reference path");

  EvaluateArgs ev_args;
  auto* ev = app.add_subcommand("evaluate", "rolling-origin accuracy report (JSON)");
  ev->add_option("--train-fraction", ev_args.train_fraction)->capture_default_str();
  ev->add_option("--k-max", ev_args.k_max)->capture_default_str();
  ev->add_option("--models", ev_args.models)->delimiter(',');
  ev->add_option("--methods", ev_args.methods)->delimiter(',');

  int p_max = 3;
  std::string ar_method = "mle";
  auto* desc = app.add_subcommand("describe", "summary statistics and AR order selection (JSON)");
  desc->add_option("--p-max", p_max)->capture_default_str();
  desc->add_option("--ar-method", ar_method, "ols, yw or mle")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  const bool json_command = fit->parsed() || ev->parsed() || desc->parsed() ||
                            (fc->parsed() && fc_args.format == "json");
  try {
    if (sim->parsed()) return cmd_simulate(g, sim_args, out);
    if (fit->parsed()) return cmd_fit(g, fit_methods, out);
    if (fc->parsed()) return cmd_forecast(g, fc_args, out);
    if (sw->parsed()) return cmd_sweep(g, sw_args, out);
    if (ev->parsed()) return cmd_evaluate(g, ev_args, out);
    if (desc->parsed()) return cmd_describe(g, p_max, ar_method, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (json_command) {
      json config = globals_json(g);
      config["command"] = app.get_subcommands().front()->get_name();
      json diagnostics;
      diagnostics["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
      try {
        emit_json(g, out, config, nullptr, diagnostics);
      } catch (const Error&) {
        out << json{{"config", config}, {"results", nullptr}, {"diagnostics", diagnostics}}.dump(2)
            << '\n';
      }
    }
    return 1;
  }
  return 0;
}

}  // namespace plinar::cli
