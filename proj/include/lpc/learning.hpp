#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpc/generating.hpp"
#include "lpc/linprog.hpp"
#include "lpc/uncertainty.hpp"

namespace lpc {

// Dual optimum of the learning problem. lambda = alpha - beta; the minimax
// expected 0-1 loss is R = 1 - (a.alpha - b.beta + gamma).
struct DualSolution {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> lambda;
  double gamma = 0.0;
  double value = 0.0;         // LP optimum = 1 - R
  double minimax_risk = 0.0;  // R
};

// Interval-form learning LP: variables (alpha, beta, gamma), alpha/beta >= 0,
// objective a.alpha - b.beta + gamma, and one constraint per (pattern,
// nonempty label subset S): sum over y in S of row y of the pattern matrix
// applied to (alpha - beta), plus |S| gamma, bounded by 1.
LinearProgram build_learning_lp(const PatternTable& table, const UncertaintyInterval& interval);

// Point-form LP over (lambda, gamma), both free, objective tau.lambda + gamma,
// same subset constraints. m fewer constraints-pairs and m fewer variables
// than the interval form.
LinearProgram build_learning_lp_point(const PatternTable& table, std::span<const double> tau);

// Solves the matching LP (point form iff a == b exactly) and unpacks the dual
// solution. Unbounded LPs signal an empty uncertainty set.
DualSolution solve_learning(const PatternTable& table, const UncertaintyInterval& interval);

enum class PatternMode { Exact, Approx };

struct LpcModel {
  DualSolution dual;
  UncertaintyInterval interval;
  GeneratingFunction gf;
  PatternTable patterns;
  PatternMode mode = PatternMode::Exact;
  int num_features = 0;
  std::vector<std::string> label_names;  // original label values, for output

  int num_labels() const { return gf.num_labels(); }
  double minimax_risk() const { return dual.minimax_risk; }
};

// Exact mode enumerates all |Y|^k patterns while that count stays within
// GeneratingFunction::kEnumerationCap, and otherwise falls back to the
// patterns observed on `data` (which approx mode always uses).
LpcModel train(GeneratingFunction gf, const UncertaintyInterval& interval, PatternMode mode,
               const LabeledDataset& data);

}  // namespace lpc
