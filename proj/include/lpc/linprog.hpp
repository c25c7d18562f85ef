#pragma once

#include <cstddef>
#include <vector>

namespace lpc {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// maximize objective . z  subject to  rows z <= rhs, and z[i] >= 0 where
// nonneg[i] (free otherwise).
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<bool> nonneg;

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rows.size(); }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> point;  // meaningful iff status == Optimal
  double value = 0.0;         // meaningful iff status == Optimal

  bool optimal() const { return status == LpStatus::Optimal; }
};

// Two-phase primal simplex on a dense tableau. Free variables are split into
// positive parts; Dantzig pricing with a permanent switch to Bland's rule
// after a degeneracy stall, so termination is guaranteed. Deterministic for a
// fixed input. Rejects non-finite coefficients with UsageError.
LpSolution solve(const LinearProgram& lp);

}  // namespace lpc
