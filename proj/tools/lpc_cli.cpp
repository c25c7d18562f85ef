// Command-line driver for the LPC shared library. Every operation goes
// through the C API in lpc.h; this file only parses arguments, moves bytes,
// and formats output files.
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpc.h"

namespace {

struct DatasetDeleter {
  void operator()(lpc_dataset* d) const { lpc_dataset_free(d); }
};
struct ModelDeleter {
  void operator()(lpc_model* m) const { lpc_model_free(m); }
};
using DatasetPtr = std::unique_ptr<lpc_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<lpc_model, ModelDeleter>;

class ApiString {
 public:
  ~ApiString() { lpc_string_free(value); }
  char** out() { return &value; }
  const char* get() const { return value; }

 private:
  char* value = nullptr;
};

// Failures surface as a machine-readable error object on stderr; the error
// code doubles as the exit code.
[[noreturn]] void fail(int code) {
  const char* kind = code == LPC_ERROR_USAGE  ? "usage"
                     : code == LPC_ERROR_DATA ? "data"
                                              : "numeric";
  std::cerr << "{\"error\": {\"code\": " << code << ", \"kind\": \"" << kind
            << "\", \"message\": \"" << lpc_last_error() << "\"}}" << std::endl;
  std::exit(code);
}

void check(int code) {
  if (code != LPC_OK) fail(code);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "{\"error\": {\"code\": 2, \"kind\": \"data\", \"message\": \"cannot write '"
              << path << "'\"}}" << std::endl;
    std::exit(LPC_ERROR_DATA);
  }
  out << contents;
  if (!contents.empty() && contents.back() != '\n') out << "\n";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct DataOptions {
  std::string data_path;
  std::string label_col;
  bool no_header = false;
  std::int64_t synthetic_n = 0;
  std::uint64_t seed = 0;
};

DatasetPtr load_dataset(const DataOptions& opt, bool labeled) {
  lpc_dataset* raw = nullptr;
  if (opt.synthetic_n > 0) {
    check(lpc_dataset_synthetic(opt.synthetic_n, opt.seed, &raw));
  } else {
    const char* label = nullptr;
    std::string storage;
    if (labeled) {
      storage = opt.label_col.empty() ? "-1" : opt.label_col;
      if (storage == "-1") {
        // default: last column; resolve by probing the width first
        lpc_dataset* probe = nullptr;
        check(lpc_dataset_from_csv(opt.data_path.c_str(), nullptr, opt.no_header ? 0 : 1, &probe));
        int width = 0;
        check(lpc_dataset_num_features(probe, &width));
        lpc_dataset_free(probe);
        storage = std::to_string(width - 1);
      }
      label = storage.c_str();
    } else if (!opt.label_col.empty()) {
      label = opt.label_col.c_str();  // drop this column from feature rows
    }
    check(lpc_dataset_from_csv(opt.data_path.c_str(), label, opt.no_header ? 0 : 1, &raw));
  }
  return DatasetPtr(raw);
}

void add_data_flags(CLI::App* cmd, DataOptions& opt, bool allow_synthetic) {
  auto* data = cmd->add_option("--data", opt.data_path, "CSV input path");
  cmd->add_option("--label-col", opt.label_col, "label column (header name or 0-based index)");
  cmd->add_flag("--no-header", opt.no_header, "CSV has no header row");
  if (allow_synthetic) {
    auto* synth = cmd->add_option("--synthetic", opt.synthetic_n,
                                  "generate a synthetic benchmark sample of this size");
    synth->excludes(data);
    data->excludes(synth);
  } else {
    data->required();
  }
}

struct TrainFlags {
  std::vector<std::string> classifiers;
  int k = 3;
  std::string interval = "hoeffding";
  double delta = 0.05;
  int folds = 10;
  std::string mode = "exact";
};

void add_train_flags(CLI::App* cmd, TrainFlags& flags) {
  cmd->add_option("--classifiers", flags.classifiers,
                  "base classifiers, e.g. knn3 knn5 knn7 or knn5 qda tree");
  cmd->add_option("--k", flags.k, "number of base classifiers when --classifiers is omitted");
  cmd->add_option("--interval", flags.interval,
                  "expectation interval: hoeffding | point | manual:<s>");
  cmd->add_option("--delta", flags.delta, "confidence level for hoeffding intervals");
  cmd->add_option("--folds", flags.folds, "cross-fitting folds for the expectation estimate");
  cmd->add_option("--mode", flags.mode, "constraint patterns: exact | approx");
}

std::string train_config_json(const TrainFlags& flags, bool synthetic, std::uint64_t seed) {
  std::ostringstream config;
  config << "{";
  config << "\"classifiers\": [";
  std::vector<std::string> names = flags.classifiers;
  if (names.empty()) {
    // synthetic default: odd-k nearest-neighbor ladder; CSV default: mixed trio
    static const std::vector<std::string> csv_defaults = {"knn5", "qda", "tree"};
    for (int i = 0; i < flags.k; ++i) {
      if (synthetic)
        names.push_back("knn" + std::to_string(2 * i + 3));
      else
        names.push_back(i < 3 ? csv_defaults[static_cast<std::size_t>(i)]
                              : "knn" + std::to_string(2 * i + 3));
    }
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    config << (i ? ", " : "") << "\"" << names[i] << "\"";
  config << "], ";
  std::string interval = flags.interval;
  if (interval.rfind("manual:", 0) == 0) {
    config << "\"interval\": \"manual\", \"s\": " << interval.substr(7) << ", ";
  } else {
    config << "\"interval\": \"" << interval << "\", ";
  }
  config << "\"delta\": " << format_double(flags.delta) << ", ";
  config << "\"folds\": " << flags.folds << ", ";
  config << "\"seed\": " << seed << ", ";
  config << "\"pattern_mode\": \"" << flags.mode << "\"";
  config << "}";
  return config.str();
}

int cmd_train(const DataOptions& data_opt, const TrainFlags& flags, const std::string& out_path,
              const std::string& report_path) {
  auto dataset = load_dataset(data_opt, true);
  auto config = train_config_json(flags, data_opt.synthetic_n > 0, data_opt.seed);
  lpc_model* raw_model = nullptr;
  ApiString report;
  check(lpc_train(dataset.get(), config.c_str(), &raw_model, report.out()));
  ModelPtr model(raw_model);
  check(lpc_model_save(model.get(), out_path.c_str()));
  write_file(report_path.empty() ? out_path + ".report.json" : report_path, report.get());
  std::cout << report.get() << std::endl;
  return 0;
}

int cmd_predict(const std::string& model_path, const DataOptions& data_opt,
                std::uint64_t seed, const std::string& out_path) {
  lpc_model* raw_model = nullptr;
  check(lpc_model_load(model_path.c_str(), &raw_model));
  ModelPtr model(raw_model);

  auto dataset = load_dataset(data_opt, false);
  std::int64_t n = 0;
  int dim = 0, labels = 0;
  check(lpc_dataset_num_rows(dataset.get(), &n));
  check(lpc_dataset_num_features(dataset.get(), &dim));
  check(lpc_model_num_labels(model.get(), &labels));

  std::vector<double> features(static_cast<std::size_t>(n) * static_cast<std::size_t>(dim));
  check(lpc_dataset_copy_features(dataset.get(), features.data()));
  std::vector<double> probs(static_cast<std::size_t>(n) * static_cast<std::size_t>(labels));
  std::vector<int> sampled(static_cast<std::size_t>(n));
  std::vector<int> argmax(static_cast<std::size_t>(n));
  check(lpc_model_predict_proba(model.get(), features.data(), n, dim, probs.data()));
  check(lpc_model_predict(model.get(), features.data(), n, dim, seed, sampled.data()));
  check(lpc_model_predict_argmax(model.get(), features.data(), n, dim, argmax.data()));

  std::ostringstream csv;
  for (int y = 0; y < labels; ++y) csv << "p" << y << ",";
  csv << "sampled,argmax\n";
  for (std::int64_t i = 0; i < n; ++i) {
    for (int y = 0; y < labels; ++y)
      csv << format_double(probs[static_cast<std::size_t>(i * labels + y)]) << ",";
    csv << sampled[static_cast<std::size_t>(i)] << "," << argmax[static_cast<std::size_t>(i)] << "\n";
  }
  if (out_path.empty())
    std::cout << csv.str();
  else
    write_file(out_path, csv.str());
  return 0;
}

int cmd_eval(const std::string& model_path, const DataOptions& data_opt, bool cv,
             const TrainFlags& flags, int draws, const std::string& out_path) {
  ApiString report;
  if (cv) {
    auto dataset = load_dataset(data_opt, true);
    auto config = train_config_json(flags, data_opt.synthetic_n > 0, data_opt.seed);
    check(lpc_evaluate_cv_json(dataset.get(), config.c_str(), 10, report.out()));
  } else {
    if (model_path.empty()) {
      std::cerr << "{\"error\": {\"code\": 1, \"kind\": \"usage\", \"message\": "
                   "\"eval needs --model (or --cv)\"}}"
                << std::endl;
      return LPC_ERROR_USAGE;
    }
    lpc_model* raw_model = nullptr;
    check(lpc_model_load(model_path.c_str(), &raw_model));
    ModelPtr model(raw_model);
    auto dataset = load_dataset(data_opt, true);
    check(lpc_evaluate_json(model.get(), dataset.get(), data_opt.seed, draws, report.out()));
  }
  if (!out_path.empty()) write_file(out_path, report.get());
  std::cout << report.get() << std::endl;
  return 0;
}

int cmd_bounds(const std::string& model_path, bool deviation, int m_samples, std::uint64_t seed,
               const std::string& out_path) {
  lpc_model* raw_model = nullptr;
  check(lpc_model_load(model_path.c_str(), &raw_model));
  ModelPtr model(raw_model);
  ApiString report;
  check(lpc_model_bounds_json(model.get(), deviation ? 1 : 0, m_samples, seed, report.out()));
  if (!out_path.empty()) write_file(out_path, report.get());
  std::cout << report.get() << std::endl;
  return 0;
}

int cmd_curve(std::uint64_t seed, const std::vector<std::int64_t>& sizes, double manual_s,
              const std::string& out_path) {
  // fixed test set per seed; fresh training set per size
  lpc_dataset* raw_test = nullptr;
  check(lpc_dataset_synthetic(10000, seed * 7919 + 17, &raw_test));
  DatasetPtr test(raw_test);

  double bayes = 0.0, bayes_se = 0.0;
  check(lpc_synth_bayes_risk(1000000, 424242, &bayes, &bayes_se));

  std::ostringstream csv;
  csv << "n,R,L,test_error,bayes_risk\n";
  for (std::size_t idx = 0; idx < sizes.size(); ++idx) {
    std::int64_t n = sizes[idx];
    lpc_dataset* raw_train = nullptr;
    check(lpc_dataset_synthetic(n, seed * 1000003 + static_cast<std::uint64_t>(n), &raw_train));
    DatasetPtr train(raw_train);

    std::ostringstream config;
    config << "{\"classifiers\": [\"knn3\", \"knn5\", \"knn7\"], \"interval\": \"manual\", "
           << "\"s\": " << format_double(manual_s) << ", \"seed\": " << seed << "}";
    lpc_model* raw_model = nullptr;
    check(lpc_train(train.get(), config.str().c_str(), &raw_model, nullptr));
    ModelPtr model(raw_model);

    double upper = 0.0, lower = 0.0, test_error = 0.0;
    check(lpc_model_minimax_risk(model.get(), &upper));
    check(lpc_model_lower_bound(model.get(), &lower));
    check(lpc_evaluate_exact_error(model.get(), test.get(), &test_error));
    csv << n << "," << format_double(upper) << "," << format_double(lower) << ","
        << format_double(test_error) << "," << format_double(bayes) << "\n";
  }
  if (out_path.empty())
    std::cout << csv.str();
  else
    write_file(out_path, csv.str());
  return 0;
}

int cmd_selfcheck(std::uint64_t seed, bool fast, double perturb, const std::string& out_path) {
  std::ostringstream config;
  config << "{\"seed\": " << seed << ", \"fast\": " << (fast ? "true" : "false")
         << ", \"perturb\": " << format_double(perturb) << "}";
  ApiString report;
  check(lpc_selfcheck_json(config.str().c_str(), report.out()));
  if (!out_path.empty()) write_file(out_path, report.get());
  std::cout << report.get() << std::endl;
  std::string text(report.get());
  bool ok = text.find("\"ok\": true") != std::string::npos;
  return ok ? 0 : LPC_ERROR_NUMERIC;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear probabilistic classifiers: minimax 0-1-loss learning with risk bounds"};
  app.require_subcommand(1);

  DataOptions data_opt;
  TrainFlags train_flags;
  std::string model_path, out_path, report_path;
  std::uint64_t seed = 0;
  int draws = 100;
  bool cv = false, deviation = false, fast = false;
  int m_samples = 50;
  double perturb = 0.0, manual_s = 0.25;
  std::vector<std::int64_t> sizes = {50, 100, 500, 1000, 5000};

  auto* train = app.add_subcommand("train", "fit a model and write model + report JSON");
  add_data_flags(train, data_opt, true);
  add_train_flags(train, train_flags);
  train->add_option("--seed", data_opt.seed, "seed for folds and synthetic data");
  train->add_option("--out", out_path, "model output path")->required();
  train->add_option("--report", report_path, "report output path (default <out>.report.json)");

  auto* predict = app.add_subcommand("predict", "per-label probabilities + sampled and argmax labels, CSV");
  predict->add_option("--model", model_path, "model file")->required();
  add_data_flags(predict, data_opt, false);
  predict->add_option("--seed", seed, "sampling seed");
  predict->add_option("--out", out_path, "CSV output path (stdout when omitted)");

  auto* eval = app.add_subcommand("eval", "score a model on labeled data, or run full CV evaluation");
  eval->add_option("--model", model_path, "model file");
  add_data_flags(eval, data_opt, true);
  eval->add_flag("--cv", cv, "10-fold pipeline evaluation instead of scoring a model file");
  add_train_flags(eval, train_flags);
  eval->add_option("--seed", data_opt.seed, "seed");
  eval->add_option("--draws", draws, "passes for the randomized error estimate");
  eval->add_option("--out", out_path, "report output path");

  auto* bounds = app.add_subcommand("bounds", "risk bounds JSON for a trained model");
  bounds->add_option("--model", model_path, "model file")->required();
  bounds->add_flag("--deviation", deviation, "add the finite-sample deviation term");
  bounds->add_option("--m-samples", m_samples, "hull samples for the coefficient-norm estimate");
  bounds->add_option("--seed", seed, "sampling seed");
  bounds->add_option("--out", out_path, "report output path");

  auto* curve = app.add_subcommand("curve", "risk bounds vs training size on the synthetic benchmark");
  curve->add_option("--seed", seed, "experiment seed");
  curve->add_option("--sizes", sizes, "training sizes");
  curve->add_option("--s", manual_s, "manual interval half-width numerator");
  curve->add_option("--out", out_path, "CSV output path (stdout when omitted)");

  auto* selfcheck = app.add_subcommand("selfcheck", "duality, sandwich, and coverage suites");
  selfcheck->add_option("--seed", seed, "suite seed");
  selfcheck->add_flag("--fast", fast, "reduced instance counts");
  selfcheck->add_option("--perturb", perturb, "test hook: shift dual values to force failures")
      ->group("");
  selfcheck->add_option("--out", out_path, "report output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : LPC_ERROR_USAGE;  // help exits clean, bad usage exits 1
  }

  if (train->parsed()) return cmd_train(data_opt, train_flags, out_path, report_path);
  if (predict->parsed()) return cmd_predict(model_path, data_opt, seed, out_path);
  if (eval->parsed()) return cmd_eval(model_path, data_opt, cv, train_flags, draws, out_path);
  if (bounds->parsed()) return cmd_bounds(model_path, deviation, m_samples, seed, out_path);
  if (curve->parsed()) return cmd_curve(seed, sizes, manual_s, out_path);
  if (selfcheck->parsed()) return cmd_selfcheck(seed, fast, perturb, out_path);
  return LPC_ERROR_USAGE;
}
