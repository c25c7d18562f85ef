#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "lpc/bounds.hpp"
#include "lpc/learning.hpp"
#include "lpc/prediction.hpp"
#include "lpc/uncertainty.hpp"

namespace lpc {

enum class IntervalMode { Hoeffding, Point, ManualS };

struct TrainSettings {
  std::vector<ClassifierConfig> classifiers;  // knn3/knn5/knn7 when empty
  IntervalMode interval_mode = IntervalMode::Hoeffding;
  double manual_s = 0.25;
  double delta = 0.05;
  int folds = 10;
  std::uint64_t seed = 0;
  PatternMode pattern_mode = PatternMode::Exact;

  static TrainSettings from_json(const nlohmann::json& config);
  nlohmann::json to_json() const;
};

struct TrainOutcome {
  LpcModel model;
  double lower = 0.0;  // L, from the extra LP
  std::int64_t lp_rows = 0;
  int folds_used = 0;
  bool folds_clamped = false;
  double wall_seconds = 0.0;
};

// Full learning pass: stratified cross-fit expectation estimate, interval
// construction, LP training, and the lower-bound LP.
TrainOutcome train_pipeline(const LabeledDataset& data, const TrainSettings& settings);

nlohmann::json train_report_json(const TrainOutcome& outcome, const nlohmann::json& config_echo);

struct EvalResult {
  double randomized_error = 0.0;
  double argmax_error = 0.0;
  double exact_expected_error = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  bool exact_error_within_bounds = false;
};

EvalResult evaluate_model(const LpcModel& model, const LabeledDataset& data, std::uint64_t seed,
                          int draws);

struct CvEvalResult {
  std::vector<double> fold_exact_errors;
  std::vector<double> fold_argmax_errors;
  double mean_exact = 0.0;
  double mean_argmax = 0.0;
};

// Paired stratified k-fold evaluation: the full pipeline is retrained on each
// fold complement and scored on the held-out fold.
CvEvalResult cv_evaluate(const LabeledDataset& data, const TrainSettings& settings, int eval_folds);

nlohmann::json bounds_report_json(const LpcModel& model, bool with_deviation, int m_samples,
                                  std::uint64_t seed);

}  // namespace lpc
