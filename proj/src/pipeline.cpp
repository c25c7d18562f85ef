#include "lpc/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "lpc/errors.hpp"
#include "lpc/version.hpp"

namespace lpc {
namespace {

std::vector<ClassifierConfig> default_classifiers() {
  return {KnnConfig{3}, KnnConfig{5}, KnnConfig{7}};
}

}  // namespace

TrainSettings TrainSettings::from_json(const nlohmann::json& config) {
  TrainSettings s;
  if (!config.is_object()) throw UsageError("train config must be a JSON object");
  for (const auto& [key, value] : config.items()) {
    if (key == "classifiers") {
      s.classifiers.clear();
      for (const auto& name : value)
        s.classifiers.push_back(parse_classifier_config(name.get<std::string>()));
    } else if (key == "interval") {
      const std::string mode = value.get<std::string>();
      if (mode == "hoeffding")
        s.interval_mode = IntervalMode::Hoeffding;
      else if (mode == "point")
        s.interval_mode = IntervalMode::Point;
      else if (mode == "manual")
        s.interval_mode = IntervalMode::ManualS;
      else
        throw UsageError("interval mode must be hoeffding, point, or manual");
    } else if (key == "s") {
      s.manual_s = value.get<double>();
    } else if (key == "delta") {
      s.delta = value.get<double>();
    } else if (key == "folds") {
      s.folds = value.get<int>();
    } else if (key == "seed") {
      s.seed = value.get<std::uint64_t>();
    } else if (key == "pattern_mode") {
      const std::string mode = value.get<std::string>();
      if (mode == "exact")
        s.pattern_mode = PatternMode::Exact;
      else if (mode == "approx")
        s.pattern_mode = PatternMode::Approx;
      else
        throw UsageError("pattern_mode must be exact or approx");
    } else {
      throw UsageError("unknown train config key '" + key + "'");
    }
  }
  if (s.classifiers.empty()) s.classifiers = default_classifiers();
  if (!(s.delta > 0.0 && s.delta < 1.0)) throw UsageError("delta must be in (0,1)");
  if (s.folds < 2) throw UsageError("folds must be >= 2");
  if (s.manual_s < 0.0) throw UsageError("manual s must be >= 0");
  return s;
}

nlohmann::json TrainSettings::to_json() const {
  nlohmann::json j;
  auto names = nlohmann::json::array();
  for (const auto& c : classifiers) names.push_back(classifier_config_name(c));
  j["classifiers"] = names;
  j["interval"] = interval_mode == IntervalMode::Hoeffding ? "hoeffding"
                  : interval_mode == IntervalMode::Point   ? "point"
                                                           : "manual";
  if (interval_mode == IntervalMode::ManualS) j["s"] = manual_s;
  j["delta"] = delta;
  j["folds"] = folds;
  j["seed"] = seed;
  j["pattern_mode"] = pattern_mode == PatternMode::Exact ? "exact" : "approx";
  return j;
}

TrainOutcome train_pipeline(const LabeledDataset& data, const TrainSettings& settings) {
  auto t0 = std::chrono::steady_clock::now();
  auto configs = settings.classifiers.empty() ? default_classifiers() : settings.classifiers;

  auto cv = estimate_expectation_cv(configs, data, settings.folds, settings.seed);

  UncertaintyInterval interval;
  const auto n = static_cast<std::int64_t>(data.size());
  switch (settings.interval_mode) {
    case IntervalMode::Hoeffding: {
      std::vector<double> range(static_cast<std::size_t>(cv.gf.m()), 1.0);
      interval = hoeffding_interval(cv.tau, n, settings.delta, range);
      break;
    }
    case IntervalMode::Point:
      interval = point_interval(cv.tau);
      interval.n = n;
      break;
    case IntervalMode::ManualS:
      interval = manual_s_interval(cv.tau, n, settings.manual_s);
      break;
  }

  TrainOutcome out{train(std::move(cv.gf), interval, settings.pattern_mode, data),
                   0.0,
                   0,
                   cv.folds_used,
                   cv.folds_clamped,
                   0.0};
  out.lower = lower_bound(out.model);
  out.lp_rows = static_cast<std::int64_t>(out.model.patterns.size()) *
                ((std::int64_t{1} << out.model.num_labels()) - 1);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

nlohmann::json train_report_json(const TrainOutcome& outcome, const nlohmann::json& config_echo) {
  nlohmann::json j;
  j["R"] = outcome.model.minimax_risk();
  j["L"] = outcome.lower;
  j["n"] = outcome.model.interval.n;
  j["m"] = outcome.model.gf.m();
  j["r"] = outcome.model.patterns.size();
  j["lp_rows"] = outcome.lp_rows;
  j["folds_used"] = outcome.folds_used;
  j["folds_clamped"] = outcome.folds_clamped;
  j["wall_time_seconds"] = outcome.wall_seconds;
  j["metadata"] = {{"config", config_echo},
                   {"version", LPC_VERSION_STRING},
                   {"wall_time_seconds", outcome.wall_seconds}};
  return j;
}

EvalResult evaluate_model(const LpcModel& model, const LabeledDataset& data, std::uint64_t seed,
                          int draws) {
  EvalResult r;
  r.randomized_error = empirical_error_randomized(model, data, seed, draws);
  r.argmax_error = empirical_error_argmax(model, data);
  r.exact_expected_error = empirical_error_exact(model, data);
  auto sandwich = risk_sandwich(model);
  r.lower = sandwich.lower;
  r.upper = sandwich.upper;
  r.exact_error_within_bounds =
      r.exact_expected_error >= r.lower - 1e-9 && r.exact_expected_error <= r.upper + 1e-9;
  return r;
}

CvEvalResult cv_evaluate(const LabeledDataset& data, const TrainSettings& settings,
                         int eval_folds) {
  if (eval_folds < 2) throw UsageError("cv_evaluate: need at least 2 folds");
  auto assignment = stratified_kfold(data, eval_folds, settings.seed);
  CvEvalResult out;
  for (std::size_t f = 0; f < assignment.folds.size(); ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < assignment.folds.size(); ++g) {
      if (g == f) continue;
      train_idx.insert(train_idx.end(), assignment.folds[g].begin(), assignment.folds[g].end());
    }
    auto train_data = data.subset(train_idx);
    auto test_data = data.subset(assignment.folds[f]);
    auto outcome = train_pipeline(train_data, settings);
    out.fold_exact_errors.push_back(empirical_error_exact(outcome.model, test_data));
    out.fold_argmax_errors.push_back(empirical_error_argmax(outcome.model, test_data));
  }
  auto mean = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };
  out.mean_exact = mean(out.fold_exact_errors);
  out.mean_argmax = mean(out.fold_argmax_errors);
  return out;
}

nlohmann::json bounds_report_json(const LpcModel& model, bool with_deviation, int m_samples,
                                  std::uint64_t seed) {
  auto h = rule_matrix(model.dual, model.patterns);
  std::vector<double> neg(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) neg[i] = -h[i];
  double kappa_h = kappa(model.patterns, model.interval, h);
  double kappa_neg_h = kappa(model.patterns, model.interval, neg);

  nlohmann::json j;
  j["R"] = model.minimax_risk();
  j["L"] = 1.0 + kappa_neg_h;
  j["kappa_h"] = kappa_h;
  j["kappa_neg_h"] = kappa_neg_h;
  if (with_deviation) {
    if (model.interval.n < 1)
      throw UsageError("bounds: model carries no sample count, cannot form a deviation term");
    double delta = model.interval.delta > 0.0 && model.interval.delta < 1.0
                       ? model.interval.delta
                       : 0.05;
    std::vector<std::vector<double>> extras = {model.interval.tau_n};
    double m_est = estimate_m_norm(model.patterns, m_samples, seed, extras);
    double lambda_sq = 0.0;
    for (double v : model.dual.lambda) lambda_sq += v * v;
    m_est = std::max(m_est, std::sqrt(lambda_sq));
    j["m_estimate"] = m_est;
    j["m_estimate_kind"] = "heuristic_lower_bound";
    j["deviation_delta"] = delta;
    j["deviation_m"] = model.gf.m();
    j["deviation_n"] = model.interval.n;
    j["deviation_c_norm2"] = model.gf.range_norm2();
    j["deviation_term"] = deviation_term(model.gf.m(), model.interval.n, delta,
                                         model.gf.range_norm2(), m_est);
    j["deviation_note"] = "optimistic: the coefficient-norm estimate is a lower bound";
  }
  return j;
}

}  // namespace lpc
