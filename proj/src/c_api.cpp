#include "lpc.h"

#include <cctype>
#include <chrono>
#include <cstring>
#include <string>

#include <json.hpp>

#include "lpc/errors.hpp"
#include "lpc/model_io.hpp"
#include "lpc/pipeline.hpp"
#include "lpc/selfcheck.hpp"
#include "lpc/version.hpp"

struct lpc_dataset {
  lpc::LabeledDataset data;
};

struct lpc_model {
  lpc::LpcModel model;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return LPC_OK;
  } catch (const lpc::UsageError& e) {
    g_last_error = e.what();
    return LPC_ERROR_USAGE;
  } catch (const lpc::DataError& e) {
    g_last_error = e.what();
    return LPC_ERROR_DATA;
  } catch (const lpc::NumericError& e) {
    g_last_error = e.what();
    return LPC_ERROR_NUMERIC;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return LPC_ERROR_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LPC_ERROR_NUMERIC;
  }
}

int usage_error(const char* message) {
  g_last_error = message;
  return LPC_ERROR_USAGE;
}

nlohmann::json parse_config(const char* config_json) {
  if (config_json == nullptr || config_json[0] == '\0') return nlohmann::json::object();
  return nlohmann::json::parse(config_json);
}

nlohmann::json with_metadata(nlohmann::json j, const nlohmann::json& config_echo,
                             double wall_seconds) {
  j["metadata"] = {{"config", config_echo},
                   {"version", LPC_VERSION_STRING},
                   {"wall_time_seconds", wall_seconds}};
  return j;
}

class WallClock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

extern "C" {

const char* lpc_version(void) { return LPC_VERSION_STRING; }

const char* lpc_last_error(void) { return g_last_error.c_str(); }

void lpc_string_free(char* s) { delete[] s; }

int lpc_dataset_from_csv(const char* path, const char* label_column, int has_header,
                         lpc_dataset** out) {
  if (path == nullptr || out == nullptr) return usage_error("null argument");
  return guarded([&] {
    std::optional<lpc::ColumnRef> column;
    if (label_column != nullptr) {
      std::string text(label_column);
      bool digits = !text.empty();
      for (char ch : text)
        if (!std::isdigit(static_cast<unsigned char>(ch))) digits = false;
      column = digits ? lpc::ColumnRef::by_index(std::stoi(text))
                      : lpc::ColumnRef::by_name(text);
    }
    *out = new lpc_dataset{lpc::load_csv(path, column, has_header != 0)};
  });
}

int lpc_dataset_synthetic(int64_t n, uint64_t seed, lpc_dataset** out) {
  if (out == nullptr) return usage_error("null argument");
  return guarded([&] {
    if (n < 1) throw lpc::UsageError("synthetic dataset: n must be >= 1");
    *out = new lpc_dataset{lpc::synth_generate(static_cast<std::size_t>(n), seed)};
  });
}

void lpc_dataset_free(lpc_dataset* dataset) { delete dataset; }

int lpc_dataset_num_rows(const lpc_dataset* dataset, int64_t* out) {
  if (dataset == nullptr || out == nullptr) return usage_error("null argument");
  *out = static_cast<int64_t>(dataset->data.size());
  return LPC_OK;
}

int lpc_dataset_num_features(const lpc_dataset* dataset, int* out) {
  if (dataset == nullptr || out == nullptr) return usage_error("null argument");
  *out = dataset->data.num_features();
  return LPC_OK;
}

int lpc_dataset_num_labels(const lpc_dataset* dataset, int* out) {
  if (dataset == nullptr || out == nullptr) return usage_error("null argument");
  *out = dataset->data.num_labels();
  return LPC_OK;
}

int lpc_dataset_copy_features(const lpc_dataset* dataset, double* out) {
  if (dataset == nullptr || out == nullptr) return usage_error("null argument");
  const auto& f = dataset->data.features();
  std::memcpy(out, f.data(), f.size() * sizeof(double));
  return LPC_OK;
}

int lpc_train(const lpc_dataset* dataset, const char* config_json, lpc_model** out_model,
              char** out_report_json) {
  if (dataset == nullptr || out_model == nullptr) return usage_error("null argument");
  return guarded([&] {
    auto config = parse_config(config_json);
    auto settings = lpc::TrainSettings::from_json(config);
    auto outcome = lpc::train_pipeline(dataset->data, settings);
    if (out_report_json != nullptr) {
      auto report = lpc::train_report_json(outcome, settings.to_json());
      *out_report_json = dup_string(report.dump(2));
    }
    *out_model = new lpc_model{std::move(outcome.model)};
  });
}

int lpc_model_save(const lpc_model* model, const char* path) {
  if (model == nullptr || path == nullptr) return usage_error("null argument");
  return guarded([&] { lpc::save_model(model->model, path, nlohmann::json::object()); });
}

int lpc_model_load(const char* path, lpc_model** out) {
  if (path == nullptr || out == nullptr) return usage_error("null argument");
  return guarded([&] { *out = new lpc_model{lpc::load_model(path)}; });
}

void lpc_model_free(lpc_model* model) { delete model; }

int lpc_model_num_labels(const lpc_model* model, int* out) {
  if (model == nullptr || out == nullptr) return usage_error("null argument");
  *out = model->model.num_labels();
  return LPC_OK;
}

int lpc_model_num_features(const lpc_model* model, int* out) {
  if (model == nullptr || out == nullptr) return usage_error("null argument");
  *out = model->model.num_features;
  return LPC_OK;
}

int lpc_model_minimax_risk(const lpc_model* model, double* out) {
  if (model == nullptr || out == nullptr) return usage_error("null argument");
  *out = model->model.minimax_risk();
  return LPC_OK;
}

int lpc_model_lower_bound(const lpc_model* model, double* out) {
  if (model == nullptr || out == nullptr) return usage_error("null argument");
  return guarded([&] { *out = lpc::lower_bound(model->model); });
}

namespace {

int check_predict_args(const lpc_model* model, const double* features, int64_t n,
                       int num_features, const void* out) {
  if (model == nullptr || features == nullptr || out == nullptr)
    return usage_error("null argument");
  if (n < 1) return usage_error("predict: n must be >= 1");
  if (num_features != model->model.num_features)
    return usage_error("predict: feature dimension mismatch");
  return LPC_OK;
}

}  // namespace

int lpc_model_predict_proba(const lpc_model* model, const double* features, int64_t n,
                            int num_features, double* out_probs) {
  int rc = check_predict_args(model, features, n, num_features, out_probs);
  if (rc != LPC_OK) return rc;
  return guarded([&] {
    const int labels = model->model.num_labels();
    for (int64_t i = 0; i < n; ++i) {
      auto dist = lpc::rule_probabilities(
          model->model,
          {features + i * num_features, static_cast<std::size_t>(num_features)});
      for (int y = 0; y < labels; ++y) out_probs[i * labels + y] = dist.probs[static_cast<std::size_t>(y)];
    }
  });
}

int lpc_model_predict(const lpc_model* model, const double* features, int64_t n, int num_features,
                      uint64_t seed, int* out_labels) {
  int rc = check_predict_args(model, features, n, num_features, out_labels);
  if (rc != LPC_OK) return rc;
  return guarded([&] {
    lpc::Rng rng(seed);
    for (int64_t i = 0; i < n; ++i)
      out_labels[i] = lpc::predict_label(
          model->model,
          {features + i * num_features, static_cast<std::size_t>(num_features)}, rng);
  });
}

int lpc_model_predict_argmax(const lpc_model* model, const double* features, int64_t n,
                             int num_features, int* out_labels) {
  int rc = check_predict_args(model, features, n, num_features, out_labels);
  if (rc != LPC_OK) return rc;
  return guarded([&] {
    for (int64_t i = 0; i < n; ++i)
      out_labels[i] = lpc::predict_argmax(
          model->model,
          {features + i * num_features, static_cast<std::size_t>(num_features)});
  });
}

int lpc_model_bounds_json(const lpc_model* model, int with_deviation, int m_samples,
                          uint64_t seed, char** out_json) {
  if (model == nullptr || out_json == nullptr) return usage_error("null argument");
  return guarded([&] {
    WallClock clock;
    auto j = lpc::bounds_report_json(model->model, with_deviation != 0, m_samples, seed);
    *out_json = dup_string(
        with_metadata(std::move(j),
                      {{"with_deviation", with_deviation != 0}, {"m_samples", m_samples}},
                      clock.seconds())
            .dump(2));
  });
}

int lpc_evaluate_json(const lpc_model* model, const lpc_dataset* dataset, uint64_t seed,
                      int draws, char** out_json) {
  if (model == nullptr || dataset == nullptr || out_json == nullptr)
    return usage_error("null argument");
  return guarded([&] {
    WallClock clock;
    auto result = lpc::evaluate_model(model->model, dataset->data, seed, draws);
    nlohmann::json j;
    j["randomized_error"] = result.randomized_error;
    j["argmax_error"] = result.argmax_error;
    j["exact_expected_error"] = result.exact_expected_error;
    j["L"] = result.lower;
    j["R"] = result.upper;
    j["exact_error_within_bounds"] = result.exact_error_within_bounds;
    j["n_test"] = dataset->data.size();
    *out_json = dup_string(
        with_metadata(std::move(j), {{"seed", seed}, {"draws", draws}}, clock.seconds()).dump(2));
  });
}

int lpc_evaluate_exact_error(const lpc_model* model, const lpc_dataset* dataset, double* out) {
  if (model == nullptr || dataset == nullptr || out == nullptr)
    return usage_error("null argument");
  return guarded([&] { *out = lpc::empirical_error_exact(model->model, dataset->data); });
}

int lpc_evaluate_cv_json(const lpc_dataset* dataset, const char* config_json, int eval_folds,
                         char** out_json) {
  if (dataset == nullptr || out_json == nullptr) return usage_error("null argument");
  return guarded([&] {
    WallClock clock;
    auto config = parse_config(config_json);
    auto settings = lpc::TrainSettings::from_json(config);
    auto result = lpc::cv_evaluate(dataset->data, settings, eval_folds);
    nlohmann::json j;
    auto& folds = j["folds"] = nlohmann::json::array();
    for (std::size_t f = 0; f < result.fold_exact_errors.size(); ++f)
      folds.push_back({{"fold", f},
                       {"exact_expected_error", result.fold_exact_errors[f]},
                       {"argmax_error", result.fold_argmax_errors[f]}});
    j["mean_exact_expected_error"] = result.mean_exact;
    j["mean_argmax_error"] = result.mean_argmax;
    *out_json = dup_string(with_metadata(std::move(j), settings.to_json(), clock.seconds()).dump(2));
  });
}

int lpc_synth_bayes_risk(int64_t num_samples, uint64_t seed, double* out_risk, double* out_se) {
  if (out_risk == nullptr) return usage_error("null argument");
  return guarded([&] {
    if (num_samples < 1) throw lpc::UsageError("bayes risk: num_samples must be >= 1");
    auto est = lpc::bayes_risk_mc(lpc::SyntheticSpec::benchmark(),
                                  static_cast<std::size_t>(num_samples), seed);
    *out_risk = est.risk;
    if (out_se != nullptr) *out_se = est.std_error;
  });
}

int lpc_selfcheck_json(const char* config_json, char** out_json) {
  if (out_json == nullptr) return usage_error("null argument");
  return guarded([&] {
    WallClock clock;
    auto config = parse_config(config_json);
    lpc::SelfCheckOptions options;
    for (const auto& [key, value] : config.items()) {
      if (key == "seed")
        options.seed = value.get<std::uint64_t>();
      else if (key == "fast")
        options.fast = value.get<bool>();
      else if (key == "perturb")
        options.value_perturbation = value.get<double>();
      else
        throw lpc::UsageError("unknown selfcheck config key '" + key + "'");
    }
    auto report = lpc::run_selfcheck(options);
    nlohmann::json j;
    j["ok"] = report.ok;
    auto& suites = j["suites"] = nlohmann::json::array();
    for (const auto& s : report.suites)
      suites.push_back({{"name", s.name},
                        {"checks", s.checks},
                        {"failures", s.failures},
                        {"messages", s.messages}});
    *out_json = dup_string(
        with_metadata(std::move(j),
                      {{"seed", options.seed},
                       {"fast", options.fast},
                       {"perturb", options.value_perturbation}},
                      clock.seconds())
            .dump(2));
  });
}

}  // extern "C"
