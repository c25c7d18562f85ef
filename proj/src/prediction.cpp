#include "lpc/prediction.hpp"

#include <algorithm>
#include <cmath>

#include "lpc/errors.hpp"

namespace lpc {
namespace {

LabelDistribution distribution_from_scores(std::vector<double> scores, int num_labels) {
  double total = 0.0;
  for (double& s : scores) {
    s = std::max(s, 0.0);
    total += s;
  }
  if (total <= 1.0) {
    const double rest = (1.0 - total) / num_labels;
    for (double& s : scores) s += rest;
  } else {
    for (double& s : scores) s /= total;
  }
  return LabelDistribution{std::move(scores)};
}

}  // namespace

LabelDistribution rule_probabilities(const LpcModel& model, std::span<const double> x) {
  if (static_cast<int>(x.size()) != model.num_features)
    throw UsageError("predict: feature dimension mismatch");
  const int labels = model.num_labels();
  auto pattern = model.gf.pattern_of(x);
  std::vector<double> scores(static_cast<std::size_t>(labels));
  for (int y = 0; y < labels; ++y) {
    std::int64_t col = y;
    for (int component : pattern) col = col * labels + component;
    scores[static_cast<std::size_t>(y)] = model.dual.lambda[static_cast<std::size_t>(col)] + model.dual.gamma;
  }
  return distribution_from_scores(std::move(scores), labels);
}

LabelDistribution rule_for_pattern(const DualSolution& dual, const PatternTable& table,
                                   std::size_t pattern_idx) {
  const int labels = table.num_labels();
  std::vector<double> scores(static_cast<std::size_t>(labels));
  for (int y = 0; y < labels; ++y)
    scores[static_cast<std::size_t>(y)] =
        dual.lambda[static_cast<std::size_t>(table.column(pattern_idx, y))] + dual.gamma;
  return distribution_from_scores(std::move(scores), labels);
}

std::vector<double> rule_matrix(const DualSolution& dual, const PatternTable& table) {
  std::vector<double> h;
  h.reserve(table.size() * static_cast<std::size_t>(table.num_labels()));
  for (std::size_t i = 0; i < table.size(); ++i) {
    auto dist = rule_for_pattern(dual, table, i);
    h.insert(h.end(), dist.probs.begin(), dist.probs.end());
  }
  return h;
}

int sample_label(const LabelDistribution& dist, Rng& rng) {
  double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t y = 0; y < dist.probs.size(); ++y) {
    acc += dist.probs[y];
    if (u < acc) return static_cast<int>(y);
  }
  return static_cast<int>(dist.probs.size()) - 1;
}

int predict_label(const LpcModel& model, std::span<const double> x, Rng& rng) {
  return sample_label(rule_probabilities(model, x), rng);
}

int predict_argmax(const LpcModel& model, std::span<const double> x) {
  auto dist = rule_probabilities(model, x);
  int best = 0;
  for (std::size_t y = 1; y < dist.probs.size(); ++y)
    if (dist.probs[y] > dist.probs[static_cast<std::size_t>(best)]) best = static_cast<int>(y);
  return best;
}

double expected_loss(std::span<const double> rule, std::span<const double> distribution) {
  if (rule.size() != distribution.size())
    throw UsageError("expected_loss: rule and distribution sizes differ");
  double mass = 0.0;
  double inner = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (distribution[i] < -1e-12) throw UsageError("expected_loss: negative probability");
    mass += distribution[i];
    inner += distribution[i] * rule[i];
  }
  if (std::abs(mass - 1.0) > 1e-9) throw UsageError("expected_loss: distribution mass != 1");
  return 1.0 - inner;
}

double empirical_error_exact(const LpcModel& model, const LabeledDataset& data) {
  if (data.size() == 0) throw DataError("empirical_error: empty dataset");
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto dist = rule_probabilities(model, data.row(i));
    total += 1.0 - dist.probs[static_cast<std::size_t>(data.label(i))];
  }
  return total / static_cast<double>(data.size());
}

double empirical_error_argmax(const LpcModel& model, const LabeledDataset& data) {
  if (data.size() == 0) throw DataError("empirical_error: empty dataset");
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < data.size(); ++i)
    if (predict_argmax(model, data.row(i)) != data.label(i)) ++wrong;
  return static_cast<double>(wrong) / static_cast<double>(data.size());
}

double empirical_error_randomized(const LpcModel& model, const LabeledDataset& data,
                                  std::uint64_t seed, int draws) {
  if (data.size() == 0) throw DataError("empirical_error: empty dataset");
  if (draws < 1) throw UsageError("empirical_error: draws must be >= 1");
  Rng rng(seed);
  std::size_t wrong = 0;
  for (int rep = 0; rep < draws; ++rep) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      auto dist = rule_probabilities(model, data.row(i));
      if (sample_label(dist, rng) != data.label(i)) ++wrong;
    }
  }
  return static_cast<double>(wrong) /
         (static_cast<double>(data.size()) * static_cast<double>(draws));
}

}  // namespace lpc
