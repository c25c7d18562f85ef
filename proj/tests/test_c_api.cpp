// Exercises the shared-library surface end to end: handles, error codes,
// thread-local error messages, and the JSON report entry points.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "lpc.h"

static int failures = 0;

#define CHECK_TRUE(cond)                                                  \
  do {                                                                    \
    if (!(cond)) {                                                        \
      std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                         \
    }                                                                     \
  } while (0)

int main() {
  CHECK_TRUE(std::strlen(lpc_version()) > 0);

  // usage errors come back as LPC_ERROR_USAGE with a message
  CHECK_TRUE(lpc_dataset_from_csv(nullptr, nullptr, 1, nullptr) == LPC_ERROR_USAGE);
  lpc_dataset* missing = nullptr;
  CHECK_TRUE(lpc_dataset_from_csv("/nonexistent/file.csv", "label", 1, &missing) ==
             LPC_ERROR_DATA);
  CHECK_TRUE(std::strlen(lpc_last_error()) > 0);

  lpc_dataset* train_data = nullptr;
  CHECK_TRUE(lpc_dataset_synthetic(200, 7, &train_data) == LPC_OK);
  int64_t rows = 0;
  int dim = 0, labels = 0;
  CHECK_TRUE(lpc_dataset_num_rows(train_data, &rows) == LPC_OK && rows == 200);
  CHECK_TRUE(lpc_dataset_num_features(train_data, &dim) == LPC_OK && dim == 4);
  CHECK_TRUE(lpc_dataset_num_labels(train_data, &labels) == LPC_OK && labels == 3);

  // bad config is a usage error
  lpc_model* bad = nullptr;
  CHECK_TRUE(lpc_train(train_data, "{\"interval\": \"bogus\"}", &bad, nullptr) ==
             LPC_ERROR_USAGE);
  CHECK_TRUE(lpc_train(train_data, "{not json", &bad, nullptr) == LPC_ERROR_USAGE);

  lpc_model* model = nullptr;
  char* report = nullptr;
  const char* config =
      "{\"classifiers\": [\"knn3\", \"knn5\", \"knn7\"], \"interval\": \"manual\", "
      "\"s\": 0.25, \"folds\": 5, \"seed\": 7}";
  CHECK_TRUE(lpc_train(train_data, config, &model, &report) == LPC_OK);
  CHECK_TRUE(report != nullptr && std::strstr(report, "\"R\"") != nullptr);
  CHECK_TRUE(std::strstr(report, "\"lp_rows\"") != nullptr);
  lpc_string_free(report);

  double risk = 0.0, lower = 0.0;
  CHECK_TRUE(lpc_model_minimax_risk(model, &risk) == LPC_OK);
  CHECK_TRUE(lpc_model_lower_bound(model, &lower) == LPC_OK);
  CHECK_TRUE(risk >= 0.0 && risk <= 1.0 && lower <= risk + 1e-9);

  // save / load round trip
  auto path = (std::filesystem::temp_directory_path() / "lpc_capi_model.json").string();
  CHECK_TRUE(lpc_model_save(model, path.c_str()) == LPC_OK);
  lpc_model* loaded = nullptr;
  CHECK_TRUE(lpc_model_load(path.c_str(), &loaded) == LPC_OK);
  std::remove(path.c_str());

  // predictions through the C surface
  std::vector<double> features(static_cast<std::size_t>(rows) * 4);
  CHECK_TRUE(lpc_dataset_copy_features(train_data, features.data()) == LPC_OK);
  std::vector<double> probs(static_cast<std::size_t>(rows) * 3);
  CHECK_TRUE(lpc_model_predict_proba(model, features.data(), rows, 4, probs.data()) == LPC_OK);
  for (int64_t i = 0; i < rows; ++i) {
    double total = 0.0;
    for (int y = 0; y < 3; ++y) {
      CHECK_TRUE(probs[static_cast<std::size_t>(i * 3 + y)] >= -1e-15);
      total += probs[static_cast<std::size_t>(i * 3 + y)];
    }
    CHECK_TRUE(std::abs(total - 1.0) <= 1e-12);
  }
  std::vector<double> probs_loaded(static_cast<std::size_t>(rows) * 3);
  CHECK_TRUE(lpc_model_predict_proba(loaded, features.data(), rows, 4, probs_loaded.data()) ==
             LPC_OK);
  CHECK_TRUE(std::memcmp(probs.data(), probs_loaded.data(), probs.size() * sizeof(double)) == 0);

  std::vector<int> sampled_a(static_cast<std::size_t>(rows));
  std::vector<int> sampled_b(static_cast<std::size_t>(rows));
  std::vector<int> argmax(static_cast<std::size_t>(rows));
  CHECK_TRUE(lpc_model_predict(model, features.data(), rows, 4, 99, sampled_a.data()) == LPC_OK);
  CHECK_TRUE(lpc_model_predict(model, features.data(), rows, 4, 99, sampled_b.data()) == LPC_OK);
  CHECK_TRUE(sampled_a == sampled_b);  // seeded reproducibility
  CHECK_TRUE(lpc_model_predict_argmax(model, features.data(), rows, 4, argmax.data()) == LPC_OK);

  // dimension mismatch is a usage error
  CHECK_TRUE(lpc_model_predict_proba(model, features.data(), rows, 3, probs.data()) ==
             LPC_ERROR_USAGE);

  // evaluation + bounds reports
  lpc_dataset* test_data = nullptr;
  CHECK_TRUE(lpc_dataset_synthetic(300, 8, &test_data) == LPC_OK);
  char* eval_json = nullptr;
  CHECK_TRUE(lpc_evaluate_json(model, test_data, 5, 20, &eval_json) == LPC_OK);
  CHECK_TRUE(std::strstr(eval_json, "exact_expected_error") != nullptr);
  lpc_string_free(eval_json);

  double exact = 0.0;
  CHECK_TRUE(lpc_evaluate_exact_error(model, test_data, &exact) == LPC_OK);
  CHECK_TRUE(exact >= 0.0 && exact <= 1.0);

  char* bounds_json = nullptr;
  CHECK_TRUE(lpc_model_bounds_json(model, 1, 10, 3, &bounds_json) == LPC_OK);
  CHECK_TRUE(std::strstr(bounds_json, "kappa_h") != nullptr);
  CHECK_TRUE(std::strstr(bounds_json, "deviation_term") != nullptr);
  lpc_string_free(bounds_json);

  double bayes = 0.0, se = 0.0;
  CHECK_TRUE(lpc_synth_bayes_risk(50000, 4, &bayes, &se) == LPC_OK);
  CHECK_TRUE(bayes > 0.05 && bayes < 0.5 && se > 0.0);

  char* selfcheck_json = nullptr;
  CHECK_TRUE(lpc_selfcheck_json("{\"fast\": true, \"seed\": 2}", &selfcheck_json) == LPC_OK);
  CHECK_TRUE(std::strstr(selfcheck_json, "\"ok\": true") != nullptr);
  lpc_string_free(selfcheck_json);

  // the perturbation hook must flip selfcheck to failing
  char* bad_selfcheck = nullptr;
  CHECK_TRUE(lpc_selfcheck_json("{\"fast\": true, \"seed\": 2, \"perturb\": 0.01}",
                                &bad_selfcheck) == LPC_OK);
  CHECK_TRUE(std::strstr(bad_selfcheck, "\"ok\": false") != nullptr);
  CHECK_TRUE(std::strstr(bad_selfcheck, "strong duality violated") != nullptr);
  lpc_string_free(bad_selfcheck);

  lpc_model_free(model);
  lpc_model_free(loaded);
  lpc_dataset_free(train_data);
  lpc_dataset_free(test_data);

  if (failures == 0) std::printf("c_api: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
