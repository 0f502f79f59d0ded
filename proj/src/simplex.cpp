#include "distlearn/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace distlearn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr int kMaxPivots = 200000;

// Standard-form problem: min c.u  s.t.  M u (=) q after adding surplus and
// artificial columns, u >= 0. Variable mapping back to x is recorded per
// original coordinate.
enum class VarKind { shifted_up, shifted_down, split };

struct VarMap {
  VarKind kind;
  std::size_t col;  // first standard-form column (split uses col and col+1)
  double base;      // lo for shifted_up, hi for shifted_down
};

struct Standard {
  std::vector<std::vector<double>> rows;  // A'u >= q
  std::vector<double> q;
  std::vector<double> cost;  // on u columns
  std::vector<VarMap> vmap;
  std::size_t n_u = 0;
};

Standard build_standard(const LinearProgram& lp) {
  Standard st;
  st.vmap.reserve(lp.dimension);
  // Variable substitutions first so the column layout is fixed.
  for (int j = 0; j < lp.dimension; ++j) {
    const double lo = lp.lower[j], hi = lp.upper[j];
    if (lo > hi) throw std::invalid_argument("simplex: empty bound interval");
    if (std::isfinite(lo)) {
      st.vmap.push_back({VarKind::shifted_up, st.n_u, lo});
      st.n_u += 1;
    } else if (std::isfinite(hi)) {
      st.vmap.push_back({VarKind::shifted_down, st.n_u, hi});
      st.n_u += 1;
    } else {
      st.vmap.push_back({VarKind::split, st.n_u, 0.0});
      st.n_u += 2;
    }
  }

  auto add_row = [&](const std::vector<double>& a, double b) {
    // Substitute x_j in a.x >= b, producing a standard-form row over u.
    std::vector<double> row(st.n_u, 0.0);
    double rhs = b;
    for (int j = 0; j < lp.dimension; ++j) {
      const double coeff = a[j];
      if (coeff == 0.0) continue;
      const VarMap& vm = st.vmap[j];
      switch (vm.kind) {
        case VarKind::shifted_up:  // x = base + u
          row[vm.col] += coeff;
          rhs -= coeff * vm.base;
          break;
        case VarKind::shifted_down:  // x = base - u
          row[vm.col] -= coeff;
          rhs -= coeff * vm.base;
          break;
        case VarKind::split:  // x = u+ - u-
          row[vm.col] += coeff;
          row[vm.col + 1] -= coeff;
          break;
      }
    }
    // Equilibrate: both sides scaled, feasible set unchanged.
    double scale = std::abs(rhs);
    for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale > 1.0) {
      for (double& v : row) v /= scale;
      rhs /= scale;
    }
    st.rows.push_back(std::move(row));
    st.q.push_back(rhs);
  };

  for (std::size_t i = 0; i < lp.rows.size(); ++i) add_row(lp.rows[i], lp.rhs[i]);

  if (lp.target_value) {
    const double z = *lp.target_value;
    const double tol = 1e-9 * std::max(1.0, std::abs(z));
    std::vector<double> neg(lp.objective);
    for (double& v : neg) v = -v;
    add_row(lp.objective, z - tol);
    add_row(neg, -(z + tol));
  }

  // Range rows for doubly-bounded variables: u <= hi - lo as -u >= -(hi-lo).
  for (int j = 0; j < lp.dimension; ++j) {
    const double lo = lp.lower[j], hi = lp.upper[j];
    if (std::isfinite(lo) && std::isfinite(hi)) {
      std::vector<double> row(st.n_u, 0.0);
      row[st.vmap[j].col] = -1.0;
      st.rows.push_back(std::move(row));
      st.q.push_back(-(hi - lo));
    }
  }

  st.cost.assign(st.n_u, 0.0);
  for (int j = 0; j < lp.dimension; ++j) {
    const double coeff = lp.objective[j];
    if (coeff == 0.0) continue;
    const VarMap& vm = st.vmap[j];
    switch (vm.kind) {
      case VarKind::shifted_up:
        st.cost[vm.col] += coeff;
        break;
      case VarKind::shifted_down:
        st.cost[vm.col] -= coeff;
        break;
      case VarKind::split:
        st.cost[vm.col] += coeff;
        st.cost[vm.col + 1] -= coeff;
        break;
    }
  }
  return st;
}

// Full-tableau simplex over M u = q, u >= 0. Columns: n_u structural, m
// surplus, then artificials. Reduced costs are recomputed from the basis each
// pivot (no cost-row drift).
class Tableau {
 public:
  Tableau(const Standard& st) : n_u_(st.n_u), m_(st.rows.size()) {
    n_cols_ = n_u_ + m_;  // artificials appended below as needed
    rows_.assign(m_, std::vector<double>(n_cols_, 0.0));
    rhs_.resize(m_);
    basis_.assign(m_, SIZE_MAX);
    for (std::size_t r = 0; r < m_; ++r) {
      // A'u - t_r = q_r; flip the row when q_r <= 0 so rhs stays nonnegative
      // with the surplus as the initial basic variable.
      const bool flip = st.q[r] <= 0.0;
      const double s = flip ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_u_; ++j) rows_[r][j] = s * st.rows[r][j];
      rows_[r][n_u_ + r] = -s;
      rhs_[r] = s * st.q[r];
      if (flip) {
        basis_[r] = n_u_ + r;  // surplus enters the basis at value -q_r >= 0
      }
    }
    // Artificials for rows whose surplus could not serve as the basic variable.
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] != SIZE_MAX) continue;
      for (auto& row : rows_) row.push_back(0.0);
      rows_[r].back() = 1.0;
      basis_[r] = n_cols_;
      ++n_cols_;
    }
    first_artificial_ = n_u_ + m_;
  }

  // Minimizes cost (length n_cols_, artificials included). Returns false on
  // unbounded. Columns >= enter_limit never enter.
  bool run(const std::vector<double>& cost, std::size_t enter_limit) {
    for (int iter = 0; iter < kMaxPivots; ++iter) {
      // Reduced costs from the current basis (Bland: first negative enters).
      std::size_t enter = SIZE_MAX;
      for (std::size_t j = 0; j < enter_limit; ++j) {
        if (is_basic_col(j)) continue;
        double rc = cost[j];
        for (std::size_t r = 0; r < m_; ++r) {
          const double cb = cost[basis_[r]];
          if (cb != 0.0) rc -= cb * rows_[r][j];
        }
        if (rc < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter == SIZE_MAX) return true;  // optimal

      // Ratio test; Bland tie-break on the smallest basic variable index.
      std::size_t leave = SIZE_MAX;
      double best = kInf;
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = rows_[r][enter];
        if (a > kPivotTol) {
          const double ratio = rhs_[r] / a;
          if (ratio < best - 1e-12 ||
              (ratio < best + 1e-12 &&
               (leave == SIZE_MAX || basis_[r] < basis_[leave]))) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave == SIZE_MAX) return false;  // unbounded direction
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: pivot limit exceeded");
  }

  double objective_of(const std::vector<double>& cost) const {
    double v = 0.0;
    for (std::size_t r = 0; r < m_; ++r) v += cost[basis_[r]] * rhs_[r];
    return v;
  }

  // Pivots artificials out of the basis where possible; remaining ones sit at
  // zero in redundant rows and are barred from re-entering.
  void retire_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (std::abs(rows_[r][j]) > 1e-7) {  // firm pivot only; the row may be redundant
          pivot(r, j);
          break;
        }
      }
    }
  }

  std::vector<double> extract_u() const {
    std::vector<double> u(n_u_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_u_) u[basis_[r]] = rhs_[r];
    return u;
  }

  std::size_t n_cols() const { return n_cols_; }
  std::size_t first_artificial() const { return first_artificial_; }

 private:
  bool is_basic_col(std::size_t j) const {
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] == j) return true;
    return false;
  }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = rows_[pr][pc];
    for (double& v : rows_[pr]) v /= p;
    rhs_[pr] /= p;
    rows_[pr][pc] = 1.0;  // cancel roundoff on the pivot itself
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == pr) continue;
      const double f = rows_[r][pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n_cols_; ++j) rows_[r][j] -= f * rows_[pr][j];
      rows_[r][pc] = 0.0;
      rhs_[r] -= f * rhs_[pr];
      if (rhs_[r] < 0.0 && rhs_[r] > -1e-11) rhs_[r] = 0.0;
    }
    basis_[pr] = pc;
  }

  std::size_t n_u_, m_, n_cols_ = 0, first_artificial_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

void LinearProgram::validate() const {
  if (dimension <= 0) throw std::invalid_argument("lp: dimension must be positive");
  auto dim = static_cast<std::size_t>(dimension);
  if (objective.size() != dim) throw std::invalid_argument("lp: objective size mismatch");
  if (lower.size() != dim || upper.size() != dim)
    throw std::invalid_argument("lp: bound size mismatch");
  if (rows.size() != rhs.size()) throw std::invalid_argument("lp: rows/rhs size mismatch");
  for (const auto& r : rows)
    if (r.size() != dim) throw std::invalid_argument("lp: row size mismatch");
  for (std::size_t j = 0; j < dim; ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]))
      throw std::invalid_argument("lp: NaN bound");
    if (lower[j] > upper[j]) throw std::invalid_argument("lp: crossed bounds");
  }
}

SimplexResult simplex_solve(const LinearProgram& lp) {
  lp.validate();
  Standard st = build_standard(lp);
  Tableau tab(st);

  // Phase 1: minimize the artificial total.
  std::vector<double> phase1(tab.n_cols(), 0.0);
  for (std::size_t j = tab.first_artificial(); j < tab.n_cols(); ++j) phase1[j] = 1.0;
  if (!tab.run(phase1, tab.n_cols()))
    throw std::runtime_error("simplex: phase 1 unbounded");  // cannot happen
  if (tab.objective_of(phase1) > kPhase1Tol) return {SolveStatus::infeasible, {}, 0.0};
  tab.retire_artificials();

  // Phase 2: original costs; artificials are barred from entering.
  std::vector<double> phase2(tab.n_cols(), 0.0);
  for (std::size_t j = 0; j < st.n_u; ++j) phase2[j] = st.cost[j];
  if (!tab.run(phase2, tab.first_artificial())) return {SolveStatus::unbounded, {}, 0.0};

  const std::vector<double> u = tab.extract_u();
  std::vector<double> x(lp.dimension, 0.0);
  for (int j = 0; j < lp.dimension; ++j) {
    const VarMap& vm = st.vmap[j];
    switch (vm.kind) {
      case VarKind::shifted_up:
        x[j] = vm.base + u[vm.col];
        break;
      case VarKind::shifted_down:
        x[j] = vm.base - u[vm.col];
        break;
      case VarKind::split:
        x[j] = u[vm.col] - u[vm.col + 1];
        break;
    }
  }
  double obj = 0.0;
  for (int j = 0; j < lp.dimension; ++j) obj += lp.objective[j] * x[j];
  return {SolveStatus::optimal, std::move(x), obj};
}

}  // namespace distlearn
