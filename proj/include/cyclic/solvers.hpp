#pragma once

#include <string>
#include <vector>

#include "cyclic/problems.hpp"
#include "cyclic/rate.hpp"
#include "cyclic/spectrum.hpp"

namespace cyclic {

// One solver run. metric[t] is ||x_t - x*|| when the minimizer is known,
// otherwise ||grad f(x_t)||; length T+1 unless the run aborted as divergent.
struct RunTrace {
  std::vector<double> metric;
  bool distance_metric = true;
  bool divergent = false;
  CycleParams params;    // cycle actually used (empty h for schedules)
  std::string schedule;  // "", "cheby", or "cheby2"
};

// Heavy ball with a cyclical step-size schedule:
//   x_1 = x_0 - h_0/(1+m) grad f(x_0)
//   x_{t+1} = x_t - h_{t mod K} grad f(x_t) + m (x_t - x_{t-1})
// m = 0 with K = 1 is plain gradient descent. Aborts (divergent flag) when
// the metric exceeds 1e12 times its initial value or turns non-finite.
RunTrace run_hbk(const ObjectiveInstance& obj, const CycleParams& p,
                 const Vector& x0, int T);

// Chebyshev semi-iterative method on a quadratic with spectrum in [mu, L]:
//   omega_0 = 2, x_1 = x_0 - 2/(L+mu) grad f(x_0),
//   omega_t = 1 / (1 - ((1-kappa)/(1+kappa))^2 omega_{t-1} / 4),
//   x_{t+1} = x_t - 2/(L+mu) omega_t grad f(x_t) + (omega_t - 1)(x_t - x_{t-1}).
// Guarantees ||x_t - x*|| <= ||x_0 - x*|| / T_t((1+kappa)/(1-kappa)).
RunTrace run_cheby_semi_iterative(const ObjectiveInstance& obj, double mu,
                                  double L, const Vector& x0, int T);

// Two-phase Chebyshev schedule for an equal-length two-interval spectrum:
//   c = sqrt((rho^2 - R^2)/(1 - R^2)), omega_0 = 2,
//   x_1 = x_0 - grad f(x_0)/L1,
//   omega_t = 1 / (1 - omega_{t-1}/(4 c^2)),
//   h_t = omega_t / L1 (t even) or omega_t / mu2 (t odd),
//   x_{t+1} = x_t - h_t grad f(x_t) + (omega_t - 1)(x_t - x_{t-1}).
// The weights converge to 1 + m of the tuned two-step cycle.
RunTrace run_cyclic_cheby2(const ObjectiveInstance& obj, const SpectrumSet& s,
                           const Vector& x0, int T);

// Per-iteration contraction estimate: exp of the least-squares slope of
// log(metric) against t for t >= burn_in. Entries from the first point that
// reaches the trace's floor (10x the minimum, once the trace has decayed by
// 1e-6) are excluded so converged tails do not flatten the fit; at least 10
// points must remain.
double empirical_rate(const RunTrace& trace, int burn_in);

}  // namespace cyclic
