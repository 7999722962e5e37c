#pragma once

#include <vector>

namespace cyclic {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status;
  std::vector<double> x;            // primal solution, size n
  double objective = 0.0;           // c . x at the optimum
  std::vector<double> multipliers;  // y with B' y = c_B, size m
};

// min c.x subject to A x = b, x >= 0, with A dense (m rows, n columns,
// row-major). Two-phase tableau simplex with Bland's rule, so pivoting is
// deterministic and cannot cycle. pivot_tol guards rejected pivots and
// reduced-cost sign tests. The multipliers solve B' y = c_B at the final
// basis; for an LP that is itself a dual, they are the original primal.
LpResult simplex_solve(const std::vector<std::vector<double>>& A,
                       std::vector<double> b, const std::vector<double>& c,
                       double pivot_tol = 1e-12);

}  // namespace cyclic
