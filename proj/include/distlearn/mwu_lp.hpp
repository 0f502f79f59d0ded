#pragma once

#include <cstdint>
#include <vector>

#include "distlearn/comm.hpp"
#include "distlearn/simplex.hpp"

namespace distlearn {

// Largest possible violation magnitude of any row over the variable box,
// computed by two-sided interval arithmetic and floored at 1 so iteration
// schedules stay positive. Infinite when a nonzero coefficient meets an
// unbounded box edge.
double lp_width(const LinearProgram& lp);

struct MwuLpParams {
  double epsilon = 0.05;    // additive slack tolerance of the averaged iterate
  double multiplier = 4.0;  // scales the width^2 ln(rows)/epsilon^2 iteration count
  long max_iterations = 0;  // 0 derives the count from epsilon and the width
  bool keep_iterates = false;
  std::uint64_t seed = 0;  // reserved; the solver is deterministic
};

struct MwuLpResult {
  SolveStatus status = SolveStatus::infeasible;
  std::vector<double> x;      // average of the oracle iterates
  std::vector<double> slack;  // row slacks of x, reported as m_i / iterations
  double min_slack = 0.0;
  long iterations = 0;
  double width = 0.0;
  std::vector<std::vector<double>> iterates;  // filled only when keep_iterates
};

// Feasibility-style solver: finds x in the box (and on the objective slice
// when target_value is set) with every row slack >= -epsilon. Each iteration
// asks a one-row oracle for a point satisfying the weight-averaged
// constraint; weights concentrate exponentially on the rows with the worst
// cumulative slack. Reports infeasible as soon as some oracle subproblem is,
// which certifies the original system has no point in the box either.
MwuLpResult mwu_lp_solve(const LinearProgram& lp, const MwuLpParams& params);

struct LpSearchResult {
  bool feasible = false;  // some probe was accepted
  double lower = 0.0;     // exit bracket
  double upper = 0.0;
  std::vector<double> x;  // solution of the smallest accepted probe
  std::vector<double> slack;
  int probes = 0;
};

// Minimizes lp.objective by bisecting on the pinned objective value and
// probing each midpoint with mwu_lp_solve. The bracket [lo, hi] must contain
// the optimum; hi is assumed achievable and is probed directly only when no
// midpoint was accepted.
LpSearchResult lp_binary_search(const LinearProgram& lp, double lo, double hi,
                                double tol, const MwuLpParams& params);

struct TwoPartyLpResult {
  MwuLpResult solve;
  CommLedger ledger;
};

// Same computation as mwu_lp_solve with the constraint rows held remotely:
// each iteration the row holder sends the weighted aggregate (dimension + 1
// words) and the optimizer replies with the oracle point (dimension words).
// The returned iterate is bit-identical to the monolithic solver's.
TwoPartyLpResult two_party_lp(const LinearProgram& lp, const MwuLpParams& params);

}  // namespace distlearn
