#pragma once

#include <optional>
#include <vector>

namespace distlearn {

// min <objective, x>  subject to  rows[i] . x >= rhs[i],  lower <= x <= upper.
// Bounds may be +-infinity. When target_value is set, the additional pinned
// constraint <objective, x> = target_value is enforced, relaxed to
// |<g,x> - z| <= 1e-9 * max(1, |z|) so the pin survives floating point.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;
  int dimension = 0;
  std::optional<double> target_value;

  void validate() const;  // throws std::invalid_argument on shape violations
};

enum class SolveStatus { optimal, infeasible, unbounded };

struct SimplexResult {
  SolveStatus status = SolveStatus::infeasible;
  std::vector<double> x;         // meaningful only when status == optimal
  double objective_value = 0.0;  // <objective, x>
};

// Dense two-phase primal simplex with Bland's rule: deterministic, anti-cycling,
// intended for desk-scale instances (hundreds of rows, tens of variables).
// Free variables are split, finite bounds are substituted away. A zero
// objective turns this into a pure feasibility solve (the phase-1 point is
// returned unchanged).
SimplexResult simplex_solve(const LinearProgram& lp);

}  // namespace distlearn
