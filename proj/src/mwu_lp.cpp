#include "distlearn/mwu_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace distlearn {

namespace {

constexpr double kAcceptSlackGuard = 1e-9;

}  // namespace

double lp_width(const LinearProgram& lp) {
  lp.validate();
  double rho = 1.0;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < lp.dimension; ++j) {
      const double a = lp.rows[i][j];
      if (a == 0.0) continue;
      if (a > 0.0) {
        lo += a * lp.lower[j];
        hi += a * lp.upper[j];
      } else {
        lo += a * lp.upper[j];
        hi += a * lp.lower[j];
      }
    }
    rho = std::max(rho, std::max(std::abs(lo - lp.rhs[i]), std::abs(hi - lp.rhs[i])));
  }
  return rho;
}

namespace {

MwuLpResult solve_core(const LinearProgram& lp, const MwuLpParams& params,
                       CommLedger* ledger) {
  lp.validate();
  if (lp.rows.empty()) throw std::invalid_argument("mwu_lp_solve: no constraint rows");
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
    throw std::invalid_argument("mwu_lp_solve: epsilon must be in (0,1)");
  if (!(params.multiplier > 0.0))
    throw std::invalid_argument("mwu_lp_solve: multiplier must be positive");

  const std::size_t n = lp.rows.size();
  const int d = lp.dimension;
  const double rho = lp_width(lp);
  if (!std::isfinite(rho))
    throw std::invalid_argument("mwu_lp_solve: unbounded constraint width");

  long rounds = params.max_iterations;
  if (rounds <= 0) {
    const double t = params.multiplier * rho * rho * std::log(static_cast<double>(n)) /
                     (params.epsilon * params.epsilon);
    rounds = std::max<long>(1, static_cast<long>(std::ceil(t)));
  }
  const double eta = params.epsilon / (2.0 * rho * rho);

  MwuLpResult out;
  out.width = rho;

  LinearProgram oracle;
  oracle.dimension = d;
  oracle.lower = lp.lower;
  oracle.upper = lp.upper;
  if (lp.target_value) {
    oracle.objective = lp.objective;
    oracle.target_value = lp.target_value;
  } else {
    oracle.objective.assign(d, 0.0);
  }
  oracle.rows.assign(1, std::vector<double>(d, 0.0));
  oracle.rhs.assign(1, 0.0);

  std::vector<double> m(n, 0.0);
  std::vector<double> xsum(d, 0.0);
  std::vector<double> p(n, 0.0);

  for (long t = 1; t <= rounds; ++t) {
    // Weights from cumulative slacks, shifted so the largest exponent is 0.
    double zmax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) zmax = std::max(zmax, -eta * m[i]);
    for (std::size_t i = 0; i < n; ++i) p[i] = std::exp(-eta * m[i] - zmax);

    auto& agg = oracle.rows[0];
    std::fill(agg.begin(), agg.end(), 0.0);
    double aggb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) agg[j] += p[i] * lp.rows[i][j];
      aggb += p[i] * lp.rhs[i];
    }
    oracle.rhs[0] = aggb;

    if (ledger)
      ledger->record(static_cast<int>(t), 1, 0, d + 1, PayloadKind::store);
    const SimplexResult sol = simplex_solve(oracle);
    if (sol.status != SolveStatus::optimal) {
      out.status = SolveStatus::infeasible;
      out.iterations = t;
      out.min_slack = -std::numeric_limits<double>::infinity();
      return out;
    }
    if (ledger) ledger->record(static_cast<int>(t), 0, 1, d, PayloadKind::store);

    for (int j = 0; j < d; ++j) xsum[j] += sol.x[j];
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      for (int j = 0; j < d; ++j) v += lp.rows[i][j] * sol.x[j];
      m[i] += v - lp.rhs[i];
    }
    if (params.keep_iterates) out.iterates.push_back(sol.x);
  }

  out.status = SolveStatus::optimal;
  out.iterations = rounds;
  out.x.resize(d);
  for (int j = 0; j < d; ++j) out.x[j] = xsum[j] / static_cast<double>(rounds);
  out.slack.resize(n);
  out.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    out.slack[i] = m[i] / static_cast<double>(rounds);
    out.min_slack = std::min(out.min_slack, out.slack[i]);
  }
  return out;
}

}  // namespace

MwuLpResult mwu_lp_solve(const LinearProgram& lp, const MwuLpParams& params) {
  return solve_core(lp, params, nullptr);
}

LpSearchResult lp_binary_search(const LinearProgram& lp, double lo, double hi,
                                double tol, const MwuLpParams& params) {
  if (!(tol > 0.0)) throw std::invalid_argument("lp_binary_search: tol must be positive");
  if (!(hi >= lo)) throw std::invalid_argument("lp_binary_search: empty bracket");

  LinearProgram probe_lp = lp;
  LpSearchResult out;
  out.lower = lo;
  out.upper = hi;

  auto accepts = [&params](const MwuLpResult& r) {
    return r.status == SolveStatus::optimal &&
           r.min_slack >= -(params.epsilon + kAcceptSlackGuard);
  };
  auto probe = [&](double z) {
    probe_lp.target_value = z;
    ++out.probes;
    return mwu_lp_solve(probe_lp, params);
  };

  while (out.upper - out.lower > tol) {
    const double mid = 0.5 * (out.lower + out.upper);
    const MwuLpResult r = probe(mid);
    if (accepts(r)) {
      out.upper = mid;
      out.x = r.x;
      out.slack = r.slack;
      out.feasible = true;
    } else {
      out.lower = mid;
    }
  }
  if (!out.feasible) {
    const MwuLpResult r = probe(out.upper);
    if (accepts(r)) {
      out.x = r.x;
      out.slack = r.slack;
      out.feasible = true;
    }
  }
  return out;
}

TwoPartyLpResult two_party_lp(const LinearProgram& lp, const MwuLpParams& params) {
  TwoPartyLpResult out;
  out.solve = solve_core(lp, params, &out.ledger);
  return out;
}

}  // namespace distlearn
