#pragma once

#include <vector>

#include "cyclic/poly.hpp"
#include "cyclic/spectrum.hpp"

namespace cyclic {

// One cycle of heavy-ball step-sizes h_0..h_{K-1} with constant momentum m.
// Iteration: x_1 = x_0 - h_0/(1+m) grad f(x_0),
//            x_{t+1} = x_t - h_{t mod K} grad f(x_t) + m (x_t - x_{t-1}).
struct CycleParams {
  std::vector<double> h;
  double m = 0.0;

  int K() const { return static_cast<int>(h.size()); }
};

void validate_cycle(const CycleParams& p);  // K >= 1, h > 0, 0 <= m < 1

// Link value sigma(lambda) = 1/2 tr prod_{i=1..K} M_i with
// M_i = [[(1+m - h_{K-i} lambda)/sqrt(m), -1], [1, 0]].
// Requires m > 0; the m = 0, K = 1 gradient-descent case is handled by
// rate_report, not by the trace formula.
double sigma_cycle(const CycleParams& p, double lambda);

// The same sigma as an expanded degree-K polynomial in lambda (exact
// coefficient bookkeeping, used by sup search for K >= 3 and by tuning).
Poly sigma_poly(const CycleParams& p);

struct SigmaSup {
  double sigma_star;
  double witness_lambda;  // smallest maximizer of |sigma| over the spectrum
};

// sup over the spectrum of |sigma|. For K <= 2 the candidate set is exact:
// interval endpoints plus, for K = 2, the parabola vertex
// (1+m)(h_0+h_1)/(2 h_0 h_1) when it lies in the spectrum. For K >= 3 the
// stationary points are the real roots of sigma' in each interval.
SigmaSup sigma_sup(const CycleParams& p, const SpectrumSet& s);

enum class Regime { Robust, Convergent, Divergent };

struct RateReport {
  double sigma_star = 0.0;
  double witness_lambda = 0.0;
  Regime regime = Regime::Robust;
  double rate = 0.0;  // asymptotic per-iteration contraction factor 1 - tau
};

// Three-regime worst-case factor:
//   sigma* <= 1                         -> sqrt(m)                  (Robust)
//   1 < sigma* < (1+m^K)/(2 m^{K/2})    -> sqrt(m) (sigma* + sqrt(sigma*^2-1))^{1/K}
//   sigma* >= (1+m^K)/(2 m^{K/2})       -> same value, >= 1         (Divergent)
RateReport rate_factor(double sigma_star, double m, int K);

// Full report for a parameter set on a spectrum. m = 0 requires K = 1 and is
// routed to the gradient-descent factor max(|1 - h mu|, |1 - h L|).
RateReport rate_report(const CycleParams& p, const SpectrumSet& s);

const char* regime_name(Regime r);

struct OptimalK2 {
  double rate;   // 1 - tau for the tuned two-step cycle
  double bound;  // r_t: worst-case distance ratio at the requested even t
};

// Closed-form optimum for the two-cycle on an equal-length pair of intervals:
// 1 - tau = (sqrt(rho^2 - R^2) - sqrt(rho^2 - 1)) / sqrt(1 - R^2), and the
// non-asymptotic even-t envelope
// r_t = (1-tau)^t (1 + t sqrt((rho^2-1)/(rho^2-R^2))).
OptimalK2 optimal_rate_K2(const GapParams& gp, int t = 0);

// Small-kappa expansion of the tuned rate (the sqrt(m) value):
//   K = 2: 1 - 2 sqrt(kappa) / sqrt(1-R^2)
//   K = 3: 1 - 2 sqrt(kappa) sqrt((1 - R^2/9) / (1 - R^2))
double asymptotic_expansion(double R, double kappa, int K);

}  // namespace cyclic
