#include "lpc/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lpc/errors.hpp"

namespace lpc {

ClassifierConfig parse_classifier_config(const std::string& text) {
  auto numeric_suffix = [&](std::size_t prefix_len) -> int {
    std::string digits = text.substr(prefix_len);
    if (digits.empty()) return -1;
    for (char ch : digits)
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw UsageError("unknown classifier '" + text + "'");
    return std::stoi(digits);
  };
  if (text.rfind("knn", 0) == 0) {
    int k = numeric_suffix(3);
    if (k < 1) throw UsageError("knn classifier needs a neighbor count, e.g. knn5");
    if (k % 2 == 0) throw UsageError("knn neighbor count must be odd");
    return KnnConfig{k};
  }
  if (text == "qda") return QdaConfig{};
  if (text == "tree") return TreeConfig{};
  if (text.rfind("tree", 0) == 0) {
    int depth = numeric_suffix(4);
    if (depth < 1) throw UsageError("tree depth must be >= 1");
    return TreeConfig{depth};
  }
  throw UsageError("unknown classifier '" + text + "' (expected knn<k>, qda, or tree[<depth>])");
}

std::string classifier_config_name(const ClassifierConfig& config) {
  if (const auto* knn = std::get_if<KnnConfig>(&config)) return "knn" + std::to_string(knn->k);
  if (std::get_if<QdaConfig>(&config)) return "qda";
  return "tree" + std::to_string(std::get<TreeConfig>(config).max_depth);
}

namespace {

struct KnnModel {
  int k = 5;
  int dim = 0;
  int num_labels = 0;
  std::vector<double> features;  // n x dim
  std::vector<int> labels;

  int predict(std::span<const double> x) const {
    const std::size_t n = labels.size();
    const std::size_t keff = std::min<std::size_t>(static_cast<std::size_t>(k), n);
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
      double sq = 0.0;
      const double* p = features.data() + i * static_cast<std::size_t>(dim);
      for (int d = 0; d < dim; ++d) {
        double diff = x[static_cast<std::size_t>(d)] - p[d];
        sq += diff * diff;
      }
      dist[i] = {sq, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(keff), dist.end());
    std::vector<int> votes(static_cast<std::size_t>(num_labels), 0);
    for (std::size_t i = 0; i < keff; ++i) votes[static_cast<std::size_t>(labels[dist[i].second])]++;
    int best = 0;
    for (int y = 1; y < num_labels; ++y)
      if (votes[static_cast<std::size_t>(y)] > votes[static_cast<std::size_t>(best)]) best = y;
    return best;
  }
};

struct QdaClass {
  std::vector<double> mean;
  std::vector<double> cov;   // dim x dim, regularized
  std::vector<double> chol;  // lower-triangular factor of cov
  double log_det = 0.0;
  double log_prior = 0.0;
};

void cholesky(const std::vector<double>& a, int n, std::vector<double>& l) {
  l.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        sum -= l[static_cast<std::size_t>(i) * n + k] * l[static_cast<std::size_t>(j) * n + k];
      if (i == j) {
        if (sum <= 0.0) throw NumericError("qda: covariance not positive definite");
        l[static_cast<std::size_t>(i) * n + j] = std::sqrt(sum);
      } else {
        l[static_cast<std::size_t>(i) * n + j] = sum / l[static_cast<std::size_t>(j) * n + j];
      }
    }
  }
}

struct QdaModel {
  int dim = 0;
  int num_labels = 0;
  std::vector<QdaClass> classes;

  void finalize_class(QdaClass& c) const {
    cholesky(c.cov, dim, c.chol);
    c.log_det = 0.0;
    for (int i = 0; i < dim; ++i)
      c.log_det += 2.0 * std::log(c.chol[static_cast<std::size_t>(i) * dim + i]);
  }

  int predict(std::span<const double> x) const {
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(dim));
    for (int y = 0; y < num_labels; ++y) {
      const auto& c = classes[static_cast<std::size_t>(y)];
      // solve L u = (x - mean); quadratic form is |u|^2
      for (int i = 0; i < dim; ++i) {
        double sum = x[static_cast<std::size_t>(i)] - c.mean[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) sum -= c.chol[static_cast<std::size_t>(i) * dim + k] * u[static_cast<std::size_t>(k)];
        u[static_cast<std::size_t>(i)] = sum / c.chol[static_cast<std::size_t>(i) * dim + i];
      }
      double quad = 0.0;
      for (double v : u) quad += v * v;
      double score = -0.5 * (c.log_det + quad) + c.log_prior;
      if (score > best_score) {
        best_score = score;
        best = y;
      }
    }
    return best;
  }
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int label = 0;
};

struct TreeModel {
  int max_depth = 10;
  int dim = 0;
  int num_labels = 0;
  std::vector<TreeNode> nodes;

  int predict(std::span<const double> x) const {
    int idx = 0;
    while (nodes[static_cast<std::size_t>(idx)].feature >= 0) {
      const auto& node = nodes[static_cast<std::size_t>(idx)];
      idx = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return nodes[static_cast<std::size_t>(idx)].label;
  }
};

double gini(std::span<const std::size_t> counts, std::size_t total) {
  if (total == 0) return 0.0;
  double g = 1.0;
  for (std::size_t c : counts) {
    double f = static_cast<double>(c) / static_cast<double>(total);
    g -= f * f;
  }
  return g;
}

int majority_label(std::span<const std::size_t> counts) {
  int best = 0;
  for (std::size_t y = 1; y < counts.size(); ++y)
    if (counts[y] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(y);
  return best;
}

class TreeBuilder {
 public:
  TreeBuilder(const LabeledDataset& data, int max_depth)
      : data_(data), max_depth_(max_depth), num_labels_(data.num_labels()) {}

  TreeModel build() {
    TreeModel model;
    model.max_depth = max_depth_;
    model.dim = data_.num_features();
    model.num_labels = num_labels_;
    std::vector<std::size_t> all(data_.size());
    std::iota(all.begin(), all.end(), 0);
    nodes_.clear();
    grow(all, 0);
    model.nodes = std::move(nodes_);
    return model;
  }

 private:
  int grow(std::vector<std::size_t>& indices, int depth) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(num_labels_), 0);
    for (std::size_t i : indices) counts[static_cast<std::size_t>(data_.label(i))]++;
    const double node_gini = gini(counts, indices.size());

    int node_id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[static_cast<std::size_t>(node_id)].label = majority_label(counts);
    if (depth >= max_depth_ || node_gini == 0.0 || indices.size() < 2) return node_id;

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_impurity = node_gini - 1e-12;
    std::vector<std::pair<double, int>> column(indices.size());
    for (int f = 0; f < data_.num_features(); ++f) {
      for (std::size_t i = 0; i < indices.size(); ++i)
        column[i] = {data_.row(indices[i])[static_cast<std::size_t>(f)], data_.label(indices[i])};
      std::sort(column.begin(), column.end());
      std::vector<std::size_t> left_counts(static_cast<std::size_t>(num_labels_), 0);
      auto right_counts = counts;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left_counts[static_cast<std::size_t>(column[i].second)]++;
        right_counts[static_cast<std::size_t>(column[i].second)]--;
        double lo = column[i].first, hi = column[i + 1].first;
        if (!(lo < hi)) continue;
        double impurity =
            (static_cast<double>(i + 1) * gini(left_counts, i + 1) +
             static_cast<double>(column.size() - i - 1) * gini(right_counts, column.size() - i - 1)) /
            static_cast<double>(column.size());
        if (impurity < best_impurity) {
          double thr = lo + (hi - lo) / 2.0;
          if (!(thr < hi)) thr = lo;
          best_impurity = impurity;
          best_feature = f;
          best_threshold = thr;
        }
      }
    }
    if (best_feature < 0) return node_id;

    std::vector<std::size_t> left, right;
    for (std::size_t i : indices) {
      if (data_.row(i)[static_cast<std::size_t>(best_feature)] <= best_threshold)
        left.push_back(i);
      else
        right.push_back(i);
    }
    if (left.empty() || right.empty()) return node_id;
    indices.clear();
    indices.shrink_to_fit();

    nodes_[static_cast<std::size_t>(node_id)].feature = best_feature;
    nodes_[static_cast<std::size_t>(node_id)].threshold = best_threshold;
    int l = grow(left, depth + 1);
    nodes_[static_cast<std::size_t>(node_id)].left = l;
    int r = grow(right, depth + 1);
    nodes_[static_cast<std::size_t>(node_id)].right = r;
    return node_id;
  }

  const LabeledDataset& data_;
  int max_depth_;
  int num_labels_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

struct BaseClassifier::Impl {
  std::variant<KnnModel, QdaModel, TreeModel> model;
};

BaseClassifier BaseClassifier::fit(const ClassifierConfig& config, const LabeledDataset& data) {
  if (data.size() == 0) throw DataError("fit: empty dataset");
  if (!data.has_labels()) throw DataError("fit: dataset has no labels");

  auto impl = std::make_shared<Impl>();
  if (const auto* knn = std::get_if<KnnConfig>(&config)) {
    if (knn->k < 1 || knn->k % 2 == 0) throw UsageError("knn: k must be an odd positive integer");
    KnnModel model;
    model.k = knn->k;
    model.dim = data.num_features();
    model.num_labels = data.num_labels();
    model.features = data.features();
    model.labels = data.labels();
    impl->model = std::move(model);
  } else if (std::get_if<QdaConfig>(&config)) {
    QdaModel model;
    model.dim = data.num_features();
    model.num_labels = data.num_labels();
    const int dim = model.dim;
    auto counts = data.class_counts();
    for (int y = 0; y < model.num_labels; ++y) {
      if (counts[static_cast<std::size_t>(y)] == 0)
        throw DataError("qda: class " + std::to_string(y) + " has no samples");
      QdaClass cls;
      cls.mean.assign(static_cast<std::size_t>(dim), 0.0);
      cls.cov.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0);
      const double nc = static_cast<double>(counts[static_cast<std::size_t>(y)]);
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.label(i) != y) continue;
        auto r = data.row(i);
        for (int d = 0; d < dim; ++d) cls.mean[static_cast<std::size_t>(d)] += r[static_cast<std::size_t>(d)];
      }
      for (auto& v : cls.mean) v /= nc;
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.label(i) != y) continue;
        auto r = data.row(i);
        for (int a = 0; a < dim; ++a)
          for (int b = 0; b <= a; ++b)
            cls.cov[static_cast<std::size_t>(a) * dim + b] +=
                (r[static_cast<std::size_t>(a)] - cls.mean[static_cast<std::size_t>(a)]) *
                (r[static_cast<std::size_t>(b)] - cls.mean[static_cast<std::size_t>(b)]);
      }
      double trace = 0.0;
      for (int a = 0; a < dim; ++a) {
        for (int b = 0; b <= a; ++b) {
          cls.cov[static_cast<std::size_t>(a) * dim + b] /= nc;
          cls.cov[static_cast<std::size_t>(b) * dim + a] = cls.cov[static_cast<std::size_t>(a) * dim + b];
        }
        trace += cls.cov[static_cast<std::size_t>(a) * dim + a];
      }
      double ridge = trace > 0.0 ? 1e-6 * trace / dim : 1e-6;
      for (int a = 0; a < dim; ++a) cls.cov[static_cast<std::size_t>(a) * dim + a] += ridge;
      cls.log_prior = std::log(nc / static_cast<double>(data.size()));
      model.classes.push_back(std::move(cls));
    }
    for (auto& cls : model.classes) model.finalize_class(cls);
    impl->model = std::move(model);
  } else {
    const auto& tree = std::get<TreeConfig>(config);
    if (tree.max_depth < 1) throw UsageError("tree: max_depth must be >= 1");
    impl->model = TreeBuilder(data, tree.max_depth).build();
  }
  return BaseClassifier(std::move(impl));
}

int BaseClassifier::predict(std::span<const double> x) const {
  int dim = num_features();
  if (static_cast<int>(x.size()) != dim)
    throw UsageError("predict: expected " + std::to_string(dim) + " features, got " +
                     std::to_string(x.size()));
  return std::visit([&](const auto& m) { return m.predict(x); }, impl_->model);
}

int BaseClassifier::num_labels() const {
  return std::visit([](const auto& m) { return m.num_labels; }, impl_->model);
}

int BaseClassifier::num_features() const {
  return std::visit([](const auto& m) { return m.dim; }, impl_->model);
}

std::string BaseClassifier::name() const {
  if (const auto* knn = std::get_if<KnnModel>(&impl_->model)) return "knn" + std::to_string(knn->k);
  if (std::get_if<QdaModel>(&impl_->model)) return "qda";
  return "tree" + std::to_string(std::get<TreeModel>(impl_->model).max_depth);
}

nlohmann::json BaseClassifier::to_json() const {
  nlohmann::json j;
  if (const auto* knn = std::get_if<KnnModel>(&impl_->model)) {
    j["kind"] = "knn";
    j["k"] = knn->k;
    j["dim"] = knn->dim;
    j["num_labels"] = knn->num_labels;
    j["features"] = knn->features;
    j["labels"] = knn->labels;
  } else if (const auto* qda = std::get_if<QdaModel>(&impl_->model)) {
    j["kind"] = "qda";
    j["dim"] = qda->dim;
    j["num_labels"] = qda->num_labels;
    auto& classes = j["classes"] = nlohmann::json::array();
    for (const auto& c : qda->classes)
      classes.push_back({{"mean", c.mean}, {"cov", c.cov}, {"log_prior", c.log_prior}});
  } else {
    const auto& tree = std::get<TreeModel>(impl_->model);
    j["kind"] = "tree";
    j["max_depth"] = tree.max_depth;
    j["dim"] = tree.dim;
    j["num_labels"] = tree.num_labels;
    auto& nodes = j["nodes"] = nlohmann::json::array();
    for (const auto& n : tree.nodes) {
      if (n.feature < 0)
        nodes.push_back({{"label", n.label}});
      else
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"label", n.label}});
    }
  }
  return j;
}

BaseClassifier BaseClassifier::from_json(const nlohmann::json& j) {
  auto impl = std::make_shared<Impl>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "knn") {
    KnnModel model;
    model.k = j.at("k").get<int>();
    model.dim = j.at("dim").get<int>();
    model.num_labels = j.at("num_labels").get<int>();
    model.features = j.at("features").get<std::vector<double>>();
    model.labels = j.at("labels").get<std::vector<int>>();
    impl->model = std::move(model);
  } else if (kind == "qda") {
    QdaModel model;
    model.dim = j.at("dim").get<int>();
    model.num_labels = j.at("num_labels").get<int>();
    for (const auto& cj : j.at("classes")) {
      QdaClass c;
      c.mean = cj.at("mean").get<std::vector<double>>();
      c.cov = cj.at("cov").get<std::vector<double>>();
      c.log_prior = cj.at("log_prior").get<double>();
      model.classes.push_back(std::move(c));
    }
    for (auto& c : model.classes) model.finalize_class(c);
    impl->model = std::move(model);
  } else if (kind == "tree") {
    TreeModel model;
    model.max_depth = j.at("max_depth").get<int>();
    model.dim = j.at("dim").get<int>();
    model.num_labels = j.at("num_labels").get<int>();
    for (const auto& nj : j.at("nodes")) {
      TreeNode n;
      if (nj.contains("feature")) {
        n.feature = nj.at("feature").get<int>();
        n.threshold = nj.at("threshold").get<double>();
        n.left = nj.at("left").get<int>();
        n.right = nj.at("right").get<int>();
      }
      n.label = nj.at("label").get<int>();
      model.nodes.push_back(n);
    }
    impl->model = std::move(model);
  } else {
    throw DataError("unknown classifier kind '" + kind + "' in model file");
  }
  return BaseClassifier(std::move(impl));
}

}  // namespace lpc
