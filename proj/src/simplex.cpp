#include "cyclic/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "cyclic/errors.hpp"
#include "cyclic/linalg.hpp"

namespace cyclic {

namespace {

// Internal signal, distinct from NumericalError so an iteration-limit failure
// is never misreported as unboundedness.
struct UnboundedRay {};

struct Tableau {
  size_t m, n_total;                     // constraints, columns
  std::vector<std::vector<double>> row;  // m x (n_total + 1), rhs last
  std::vector<double> red;               // reduced costs, size n_total
  double obj = 0.0;                      // current objective value
  std::vector<size_t> basis;             // basis[i] = column basic in row i

  void pivot(size_t r, size_t col) {
    double p = row[r][col];
    for (double& v : row[r]) v /= p;
    for (size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      double f = row[i][col];
      if (f == 0.0) continue;
      for (size_t k = 0; k <= n_total; ++k) row[i][k] -= f * row[r][k];
    }
    double f = red[col];
    if (f != 0.0) {
      for (size_t k = 0; k < n_total; ++k) red[k] -= f * row[r][k];
      obj += f * row[r][n_total];
    }
    basis[r] = col;
  }

  // Min ratio; among near-ties the largest pivot element wins so degenerate
  // pivots on noise-sized entries cannot blow up the tableau; exact ties fall
  // back to the lowest basis index. Returns m when the column has no
  // admissible entry.
  size_t leaving_row(size_t col, double tol) const {
    double best_ratio = 0.0;
    bool any = false;
    for (size_t i = 0; i < m; ++i) {
      if (row[i][col] > tol) {
        double ratio = row[i][n_total] / row[i][col];
        if (!any || ratio < best_ratio) {
          any = true;
          best_ratio = ratio;
        }
      }
    }
    if (!any) return m;
    const double tie = 1e-9 * (1.0 + std::abs(best_ratio));
    size_t leave = m;
    for (size_t i = 0; i < m; ++i) {
      if (row[i][col] > tol &&
          row[i][n_total] / row[i][col] <= best_ratio + tie) {
        if (leave == m || row[i][col] > row[leave][col] ||
            (row[i][col] == row[leave][col] && basis[i] < basis[leave])) {
          leave = i;
        }
      }
    }
    return leave;
  }

  // Entering: most negative reduced cost, or lowest index (Bland) when the
  // caller detects a degeneracy stall. Lowest-index pricing alone would file
  // through long runs of near-duplicate sample columns and grind the basis
  // into ill-conditioned corners. Columns whose reduced cost is negative at
  // rounding-noise level but have no admissible pivot entry are skipped; a
  // decisively negative one without an entry flags an unbounded ray.
  // Returns false at optimality.
  bool step(double tol, size_t allowed_cols, bool bland) {
    constexpr double kDecisive = 1e-7;
    size_t enter = n_total;
    size_t enter_leave = m;
    double most_negative = -tol;
    for (size_t j = 0; j < allowed_cols; ++j) {
      if (red[j] >= (bland ? -tol : most_negative)) continue;
      size_t lr = leaving_row(j, tol);
      if (lr == m) {
        if (red[j] < -kDecisive) throw UnboundedRay{};
        continue;
      }
      enter = j;
      enter_leave = lr;
      if (bland) break;
      most_negative = red[j];
    }
    if (enter == n_total) return false;
    pivot(enter_leave, enter);
    return true;
  }
};

}  // namespace

LpResult simplex_solve(const std::vector<std::vector<double>>& A,
                       std::vector<double> b, const std::vector<double>& c,
                       double pivot_tol) {
  const size_t m = A.size();
  const size_t n = c.size();
  if (m == 0 || n == 0) throw DegenerateInput("simplex: empty program");
  for (const auto& r : A) {
    if (r.size() != n) throw DegenerateInput("simplex: ragged constraint matrix");
  }

  Tableau t;
  t.m = m;
  t.n_total = n + m;  // structural + artificial
  t.row.assign(m, std::vector<double>(t.n_total + 1, 0.0));
  t.basis.resize(m);
  for (size_t i = 0; i < m; ++i) {
    double sign = (b[i] < 0.0) ? -1.0 : 1.0;
    for (size_t j = 0; j < n; ++j) t.row[i][j] = sign * A[i][j];
    t.row[i][n + i] = 1.0;
    t.row[i][t.n_total] = sign * b[i];
    t.basis[i] = n + i;
  }

  // Phase 1: minimize the artificial sum. Reduced cost of column j is
  // -sum_i row[i][j] while all artificials are basic at cost 1.
  t.red.assign(t.n_total, 0.0);
  t.obj = 0.0;
  for (size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (size_t i = 0; i < m; ++i) s += t.row[i][j];
    t.red[j] = -s;
  }
  for (size_t i = 0; i < m; ++i) t.obj += t.row[i][t.n_total];

  // Dantzig pricing normally; Bland order after a degeneracy stall, which
  // restores the termination guarantee.
  auto run_phase = [&t, pivot_tol](size_t allowed_cols) {
    constexpr long kMaxIters = 200000;
    constexpr long kStallLimit = 200;
    long iters = 0;
    long stall = 0;
    double prev = t.obj;
    while (t.step(pivot_tol, allowed_cols, stall > kStallLimit)) {
      if (++iters > kMaxIters) {
        throw NumericalError("simplex: iteration limit");
      }
      if (t.obj < prev - 1e-15 * (1.0 + std::abs(prev))) {
        stall = 0;
        prev = t.obj;
      } else {
        ++stall;
      }
    }
  };

  try {
    run_phase(n);
  } catch (const UnboundedRay&) {
    // Phase 1 is bounded below by zero; a ray here means the tableau degraded.
    throw NumericalError("simplex: lost feasibility direction in phase 1");
  }
  if (t.obj > 1e-8 * (1.0 + std::abs(t.obj))) {
    return {LpStatus::Infeasible, {}, 0.0, {}};
  }

  // Drive leftover artificials out where a structural pivot exists (largest
  // magnitude, to keep the tableau well scaled); a row with none is redundant
  // and its artificial stays basic at level zero.
  for (size_t i = 0; i < m; ++i) {
    if (t.basis[i] >= n) {
      size_t best_j = n;
      double best = pivot_tol;
      for (size_t j = 0; j < n; ++j) {
        if (std::abs(t.row[i][j]) > best) {
          best = std::abs(t.row[i][j]);
          best_j = j;
        }
      }
      if (best_j < n) t.pivot(i, best_j);
    }
  }

  // Phase 2 objective: rebuild reduced costs for the real cost vector.
  t.red.assign(t.n_total, 0.0);
  for (size_t j = 0; j < n; ++j) t.red[j] = c[j];
  t.obj = 0.0;
  for (size_t i = 0; i < m; ++i) {
    size_t bj = t.basis[i];
    double cb = (bj < n) ? c[bj] : 0.0;
    if (cb == 0.0) continue;
    for (size_t k = 0; k < t.n_total; ++k) t.red[k] -= cb * t.row[i][k];
    t.obj += cb * t.row[i][t.n_total];
  }
  for (size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) t.red[t.basis[i]] = 0.0;
  }

  LpResult out;
  try {
    run_phase(n);
  } catch (const UnboundedRay&) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.x.assign(n, 0.0);
  for (size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) out.x[t.basis[i]] = t.row[i][t.n_total];
  }
  out.objective = t.obj;

  // Multipliers from the original basis columns: B' y = c_B.
  std::vector<std::vector<double>> Bt(m, std::vector<double>(m, 0.0));
  std::vector<double> cb(m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    size_t bj = t.basis[i];
    if (bj < n) {
      for (size_t r = 0; r < m; ++r) Bt[i][r] = A[r][bj];
      cb[i] = c[bj];
    } else {
      Bt[i][bj - n] = (b[bj - n] < 0.0) ? -1.0 : 1.0;
      cb[i] = 0.0;
    }
  }
  out.multipliers = solve_linear_system(std::move(Bt), std::move(cb));
  return out;
}

}  // namespace cyclic
