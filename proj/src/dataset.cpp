#include "lpc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lpc/errors.hpp"
#include "lpc/rng.hpp"

namespace lpc {

LabeledDataset::LabeledDataset(std::vector<double> features, int num_features,
                               std::vector<int> labels, std::vector<std::string> label_names)
    : features_(std::move(features)),
      num_features_(num_features),
      labels_(std::move(labels)),
      label_names_(std::move(label_names)) {
  if (num_features_ < 1) throw DataError("dataset: feature dimension must be >= 1");
  if (features_.size() % static_cast<std::size_t>(num_features_) != 0)
    throw DataError("dataset: feature buffer size is not a multiple of the dimension");
  num_rows_ = features_.size() / static_cast<std::size_t>(num_features_);
  if (!labels_.empty() && labels_.size() != num_rows_)
    throw DataError("dataset: label count does not match row count");
  for (int y : labels_)
    if (y < 0 || y >= num_labels()) throw DataError("dataset: label out of range");
}

std::vector<std::size_t> LabeledDataset::class_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_labels()), 0);
  for (int y : labels_) counts[static_cast<std::size_t>(y)]++;
  return counts;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  std::vector<double> feats;
  feats.reserve(indices.size() * static_cast<std::size_t>(num_features_));
  std::vector<int> labs;
  labs.reserve(indices.size());
  for (std::size_t i : indices) {
    auto r = row(i);
    feats.insert(feats.end(), r.begin(), r.end());
    if (has_labels()) labs.push_back(labels_[i]);
  }
  return LabeledDataset(std::move(feats), num_features_, std::move(labs), label_names_);
}

SyntheticSpec SyntheticSpec::benchmark() {
  SyntheticSpec spec;
  spec.means = {
      {{1, 1, 1, 1}, {3, 3, 3, 3}},
      {{1, 2, 1, 2}, {4, 3, 4, 3}},
      {{2, 2, 2, 2}, {4, 4, 4, 4}},
  };
  spec.variance = 0.49;
  return spec;
}

namespace {

std::vector<double> effective_priors(const SyntheticSpec& spec) {
  if (spec.priors.empty())
    return std::vector<double>(static_cast<std::size_t>(spec.num_classes()),
                               1.0 / spec.num_classes());
  if (static_cast<int>(spec.priors.size()) != spec.num_classes())
    throw UsageError("synthetic spec: priors size mismatch");
  return spec.priors;
}

int sample_class(std::span<const double> priors, Rng& rng) {
  double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t c = 0; c < priors.size(); ++c) {
    acc += priors[c];
    if (u < acc) return static_cast<int>(c);
  }
  return static_cast<int>(priors.size()) - 1;
}

}  // namespace

LabeledDataset synth_generate(const SyntheticSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw UsageError("synth_generate: n must be >= 1");
  const int dim = spec.dim();
  const double sigma = std::sqrt(spec.variance);
  auto priors = effective_priors(spec);
  Rng rng(seed);

  std::vector<double> feats;
  feats.reserve(n * static_cast<std::size_t>(dim));
  std::vector<int> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    int cls = sample_class(priors, rng);
    const auto& comp = spec.means[static_cast<std::size_t>(cls)];
    const auto& mean = comp[rng.uniform() < 0.5 ? 0 : 1];
    for (int d = 0; d < dim; ++d) feats.push_back(mean[static_cast<std::size_t>(d)] + sigma * rng.normal());
    labels.push_back(cls);
  }
  std::vector<std::string> names;
  for (int c = 0; c < spec.num_classes(); ++c) names.push_back(std::to_string(c));
  return LabeledDataset(std::move(feats), dim, std::move(labels), std::move(names));
}

LabeledDataset synth_generate(std::size_t n, std::uint64_t seed) {
  return synth_generate(SyntheticSpec::benchmark(), n, seed);
}

BayesRiskEstimate bayes_risk_mc(const SyntheticSpec& spec, std::size_t num_samples,
                                std::uint64_t seed) {
  if (num_samples < 1) throw UsageError("bayes_risk_mc: num_samples must be >= 1");
  const int dim = spec.dim();
  const int classes = spec.num_classes();
  const double sigma = std::sqrt(spec.variance);
  auto priors = effective_priors(spec);
  Rng rng(seed);

  std::vector<double> x(static_cast<std::size_t>(dim));
  std::size_t errors = 0;
  for (std::size_t i = 0; i < num_samples; ++i) {
    int cls = sample_class(priors, rng);
    const auto& comp = spec.means[static_cast<std::size_t>(cls)];
    const auto& mean = comp[rng.uniform() < 0.5 ? 0 : 1];
    for (int d = 0; d < dim; ++d) x[static_cast<std::size_t>(d)] = mean[static_cast<std::size_t>(d)] + sigma * rng.normal();

    // posterior score: prior * mixture density (common factors dropped)
    int best = 0;
    double best_score = -1.0;
    for (int c = 0; c < classes; ++c) {
      double score = 0.0;
      for (const auto& mu : spec.means[static_cast<std::size_t>(c)]) {
        double sq = 0.0;
        for (int d = 0; d < dim; ++d) {
          double diff = x[static_cast<std::size_t>(d)] - mu[static_cast<std::size_t>(d)];
          sq += diff * diff;
        }
        score += 0.5 * std::exp(-sq / (2.0 * spec.variance));
      }
      score *= priors[static_cast<std::size_t>(c)];
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    if (best != cls) ++errors;
  }
  double risk = static_cast<double>(errors) / static_cast<double>(num_samples);
  double se = std::sqrt(std::max(risk * (1.0 - risk), 0.0) / static_cast<double>(num_samples));
  return {risk, se};
}

namespace {

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col_no) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  if (begin == end) {
    std::ostringstream msg;
    msg << "csv: missing value at line " << line_no << ", column " << col_no + 1;
    throw DataError(msg.str());
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    std::ostringstream msg;
    msg << "csv: non-numeric value '" << std::string(begin, end) << "' at line " << line_no
        << ", column " << col_no + 1;
    throw DataError(msg.str());
  }
  return value;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

LabeledDataset load_csv(const std::string& path, const std::optional<ColumnRef>& label_column,
                        bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open '" + path + "'");

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  if (has_header) {
    if (!std::getline(in, line)) throw DataError("csv: empty file '" + path + "'");
    ++line_no;
    header = split_line(line);
    for (auto& h : header) h = trim(h);
  }

  int label_idx = -1;  // resolved on first data row when by index
  if (label_column) {
    if (label_column->name) {
      if (!has_header) throw DataError("csv: label column by name requires a header");
      auto it = std::find(header.begin(), header.end(), *label_column->name);
      if (it == header.end())
        throw DataError("csv: label column '" + *label_column->name + "' not found in header");
      label_idx = static_cast<int>(it - header.begin());
    } else {
      label_idx = *label_column->index;
    }
  }

  std::vector<double> feats;
  std::vector<int> labels;
  std::vector<std::string> label_names;
  int ncols = -1;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == EOF) break;  // trailing newline
    auto cells = split_line(line);
    if (ncols < 0) {
      ncols = static_cast<int>(cells.size());
      if (label_column && (label_idx < 0 || label_idx >= ncols))
        throw DataError("csv: label column index out of range");
      if (ncols - (label_column ? 1 : 0) < 1)
        throw DataError("csv: no feature columns");
    } else if (static_cast<int>(cells.size()) != ncols) {
      std::ostringstream msg;
      msg << "csv: line " << line_no << " has " << cells.size() << " cells, expected " << ncols;
      throw DataError(msg.str());
    }
    for (int c = 0; c < ncols; ++c) {
      if (label_column && c == label_idx) {
        std::string name = trim(cells[static_cast<std::size_t>(c)]);
        if (name.empty()) {
          std::ostringstream msg;
          msg << "csv: missing label at line " << line_no << ", column " << c + 1;
          throw DataError(msg.str());
        }
        auto it = std::find(label_names.begin(), label_names.end(), name);
        if (it == label_names.end()) {
          labels.push_back(static_cast<int>(label_names.size()));
          label_names.push_back(name);
        } else {
          labels.push_back(static_cast<int>(it - label_names.begin()));
        }
      } else {
        feats.push_back(parse_cell(cells[static_cast<std::size_t>(c)], line_no,
                                   static_cast<std::size_t>(c)));
      }
    }
    ++rows;
  }
  if (rows == 0) throw DataError("csv: no data rows in '" + path + "'");
  int dim = ncols - (label_column ? 1 : 0);
  return LabeledDataset(std::move(feats), dim, std::move(labels), std::move(label_names));
}

FoldAssignment stratified_kfold(const LabeledDataset& data, int k, std::uint64_t seed) {
  if (data.size() == 0) throw DataError("stratified_kfold: empty dataset");
  if (!data.has_labels()) throw DataError("stratified_kfold: dataset has no labels");
  if (k < 1) throw UsageError("stratified_kfold: k must be >= 1");

  auto counts = data.class_counts();
  std::size_t min_count = data.size();
  for (std::size_t c : counts)
    if (c > 0) min_count = std::min(min_count, c);
  FoldAssignment out;
  out.k_used = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(k), min_count));
  out.clamped = out.k_used < k;
  out.folds.assign(static_cast<std::size_t>(out.k_used), {});

  Rng rng(seed);
  for (int cls = 0; cls < data.num_labels(); ++cls) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < data.size(); ++i)
      if (data.label(i) == cls) members.push_back(i);
    // canonical order first, so within-class input reorderings give the same
    // folds as (x, y) multisets
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      auto ra = data.row(a), rb = data.row(b);
      return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    shuffle(members, rng);
    for (std::size_t i = 0; i < members.size(); ++i)
      out.folds[i % static_cast<std::size_t>(out.k_used)].push_back(members[i]);
  }
  for (auto& fold : out.folds) std::sort(fold.begin(), fold.end());
  return out;
}

}  // namespace lpc
