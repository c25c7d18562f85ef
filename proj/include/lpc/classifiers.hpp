#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lpc/dataset.hpp"

namespace lpc {

struct KnnConfig {
  int k = 5;
};
struct QdaConfig {};
struct TreeConfig {
  int max_depth = 10;
};

using ClassifierConfig = std::variant<KnnConfig, QdaConfig, TreeConfig>;

// "knn<k>" | "qda" | "tree" | "tree<depth>"
ClassifierConfig parse_classifier_config(const std::string& text);
std::string classifier_config_name(const ClassifierConfig& config);

// Deterministic multiclass classifier with frozen fitted state. All
// prediction tie-breaks resolve to the smallest label index; KNN distance
// ties resolve in training order.
class BaseClassifier {
 public:
  static BaseClassifier fit(const ClassifierConfig& config, const LabeledDataset& data);

  int predict(std::span<const double> x) const;
  int num_labels() const;
  int num_features() const;
  std::string name() const;

  nlohmann::json to_json() const;
  static BaseClassifier from_json(const nlohmann::json& j);

 private:
  struct Impl;
  explicit BaseClassifier(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace lpc
