#include <doctest.h>

#include <vector>

#include "lpc/classifiers.hpp"
#include "lpc/errors.hpp"
#include "lpc/rng.hpp"

using namespace lpc;

namespace {

LabeledDataset make_data(std::vector<double> feats, int dim, std::vector<int> labels,
                         int num_labels) {
  std::vector<std::string> names;
  for (int i = 0; i < num_labels; ++i) names.push_back(std::to_string(i));
  return LabeledDataset(std::move(feats), dim, std::move(labels), std::move(names));
}

}  // namespace

TEST_SUITE("classifiers") {

TEST_CASE("knn with a single training point is constant") {
  auto data = make_data({0.0}, 1, {2}, 3);
  auto knn = BaseClassifier::fit(KnnConfig{1}, data);
  CHECK(knn.predict(std::vector<double>{-100.0}) == 2);
  CHECK(knn.predict(std::vector<double>{57.0}) == 2);
}

TEST_CASE("knn3 votes among the nearest three") {
  auto data = make_data({0.0, 0.1, 10.0}, 1, {0, 0, 1}, 2);
  auto knn = BaseClassifier::fit(KnnConfig{3}, data);
  // query 0.05: neighbors at 0.0 and 0.1 (label 0) out-vote 10.0
  CHECK(knn.predict(std::vector<double>{0.05}) == 0);
  CHECK(knn.predict(std::vector<double>{9.9}) == 0);  // still all three vote
}

TEST_CASE("knn with k >= n reduces to the majority label") {
  auto data = make_data({0, 1, 2, 3, 4}, 1, {1, 1, 1, 0, 0}, 2);
  auto knn = BaseClassifier::fit(KnnConfig{5}, data);
  for (double q : {-5.0, 0.0, 3.9, 100.0}) CHECK(knn.predict(std::vector<double>{q}) == 1);
  // k larger than the training set clamps
  auto knn_big = BaseClassifier::fit(KnnConfig{99}, data);
  CHECK(knn_big.predict(std::vector<double>{0.0}) == 1);
}

TEST_CASE("knn vote ties break to the smallest label") {
  auto data = make_data({0.0, 1.0}, 1, {1, 0}, 2);
  auto knn = BaseClassifier::fit(KnnConfig{3}, data);  // clamps to 2, tie 1-1
  CHECK(knn.predict(std::vector<double>{0.5}) == 0);
}

TEST_CASE("qda separates well-separated gaussians with zero training error") {
  Rng rng(8);
  std::vector<double> feats;
  std::vector<int> labels;
  for (int i = 0; i < 40; ++i) {
    double base = i < 20 ? 0.0 : 10.0;
    feats.push_back(base + rng.normal());
    feats.push_back(base + rng.normal());
    labels.push_back(i < 20 ? 0 : 1);
  }
  auto data = make_data(feats, 2, labels, 2);
  auto qda = BaseClassifier::fit(QdaConfig{}, data);
  for (std::size_t i = 0; i < data.size(); ++i) CHECK(qda.predict(data.row(i)) == data.label(i));
}

TEST_CASE("qda is invariant to sample reordering") {
  Rng rng(9);
  std::vector<double> feats;
  std::vector<int> labels;
  for (int i = 0; i < 30; ++i) {
    feats.push_back(rng.uniform(-1, 1) + (i % 2 ? 2.0 : 0.0));
    feats.push_back(rng.uniform(-1, 1));
    labels.push_back(i % 2);
  }
  auto data = make_data(feats, 2, labels, 2);

  std::vector<double> feats_rev;
  std::vector<int> labels_rev;
  for (int i = 29; i >= 0; --i) {
    feats_rev.push_back(feats[2 * static_cast<std::size_t>(i)]);
    feats_rev.push_back(feats[2 * static_cast<std::size_t>(i) + 1]);
    labels_rev.push_back(labels[static_cast<std::size_t>(i)]);
  }
  auto data_rev = make_data(feats_rev, 2, labels_rev, 2);

  auto a = BaseClassifier::fit(QdaConfig{}, data);
  auto b = BaseClassifier::fit(QdaConfig{}, data_rev);
  Rng query_rng(10);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> q = {query_rng.uniform(-2, 4), query_rng.uniform(-2, 2)};
    CHECK(a.predict(q) == b.predict(q));
  }
}

TEST_CASE("qda handles tiny classes through regularization") {
  // a single-sample class has zero covariance; the ridge keeps it usable
  // (a sharp spike at its mean) instead of aborting the fit
  auto data = make_data({0.0, 0.0, 5.0, 5.0, 5.1, 5.1}, 2, {0, 1, 1}, 2);
  auto qda = BaseClassifier::fit(QdaConfig{}, data);
  CHECK(qda.predict(std::vector<double>{0.0, 0.0}) == 0);
  CHECK(qda.predict(std::vector<double>{5.0, 5.0}) == 1);
}

TEST_CASE("decision tree reaches zero training error on consistent data") {
  Rng rng(12);
  std::vector<double> feats;
  std::vector<int> labels;
  for (int i = 0; i < 60; ++i) {
    double x = rng.uniform(0, 1), y = rng.uniform(0, 1);
    feats.push_back(x);
    feats.push_back(y);
    labels.push_back((x > 0.5) + (y > 0.5));  // three regions, consistent
  }
  auto data = make_data(feats, 2, labels, 3);
  auto tree = BaseClassifier::fit(TreeConfig{64}, data);
  for (std::size_t i = 0; i < data.size(); ++i) CHECK(tree.predict(data.row(i)) == data.label(i));
}

TEST_CASE("decision tree depth limit forces a leaf") {
  auto data = make_data({0, 1, 2, 3}, 1, {0, 1, 0, 1}, 2);
  auto stump = BaseClassifier::fit(TreeConfig{1}, data);
  int changes = 0;
  int prev = stump.predict(std::vector<double>{-0.5});
  for (double q = 0.5; q < 4; q += 1.0) {
    int cur = stump.predict(std::vector<double>{q});
    if (cur != prev) ++changes;
    prev = cur;
  }
  CHECK(changes <= 1);  // a depth-1 tree has a single split
}

TEST_CASE("fit rejects empty datasets and bad configs") {
  CHECK_THROWS_AS(BaseClassifier::fit(KnnConfig{1}, LabeledDataset()), DataError);
  auto data = make_data({0.0}, 1, {0}, 1);
  CHECK_THROWS_AS(BaseClassifier::fit(KnnConfig{2}, data), UsageError);
  CHECK_THROWS_AS(BaseClassifier::fit(TreeConfig{0}, data), UsageError);
}

TEST_CASE("predict validates the feature dimension") {
  auto data = make_data({0.0, 1.0}, 2, {0}, 1);
  auto knn = BaseClassifier::fit(KnnConfig{1}, data);
  CHECK_THROWS_AS(knn.predict(std::vector<double>{1.0}), UsageError);
}

TEST_CASE("classifier config parsing") {
  CHECK(classifier_config_name(parse_classifier_config("knn7")) == "knn7");
  CHECK(classifier_config_name(parse_classifier_config("qda")) == "qda");
  CHECK(classifier_config_name(parse_classifier_config("tree")) == "tree10");
  CHECK(classifier_config_name(parse_classifier_config("tree4")) == "tree4");
  CHECK_THROWS_AS(parse_classifier_config("knn4"), UsageError);
  CHECK_THROWS_AS(parse_classifier_config("forest"), UsageError);
}

TEST_CASE("serialization round-trips predictions exactly") {
  Rng rng(14);
  std::vector<double> feats;
  std::vector<int> labels;
  for (int i = 0; i < 50; ++i) {
    feats.push_back(rng.uniform(-2, 2));
    feats.push_back(rng.uniform(-2, 2));
    labels.push_back(static_cast<int>(rng.below(3)));
  }
  auto data = make_data(feats, 2, labels, 3);
  for (const auto& config :
       std::vector<ClassifierConfig>{KnnConfig{3}, QdaConfig{}, TreeConfig{6}}) {
    auto fitted = BaseClassifier::fit(config, data);
    auto restored = BaseClassifier::from_json(fitted.to_json());
    Rng query_rng(15);
    for (int i = 0; i < 100; ++i) {
      std::vector<double> q = {query_rng.uniform(-3, 3), query_rng.uniform(-3, 3)};
      CHECK(fitted.predict(q) == restored.predict(q));
    }
  }
}

}  // TEST_SUITE
