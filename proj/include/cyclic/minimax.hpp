#pragma once

#include <vector>

#include "cyclic/poly.hpp"
#include "cyclic/spectrum.hpp"

namespace cyclic {

struct SigmaLpResult {
  Poly sigma;      // degree <= K, |sigma| <= 1 on the sample points
  double sigma0;   // sigma(0), the maximized objective
  int points_used;
};

// Discretized minimax design: maximize sigma(0) over degree-K polynomials
// with |sigma(lambda_j)| <= 1 at Chebyshev-Lobatto nodes covering the
// spectrum (n_points total, split across intervals proportionally to length,
// at least K+2 per interval; endpoints always included). The 2n-constraint
// program in K+1 coefficients is solved through its dual so the dense
// simplex tableau stays (K+2) x O(n).
SigmaLpResult solve_sigma_lp(const SpectrumSet& s, int K, int n_points);

struct EquioscPoint {
  double lambda;
  int sign;  // +1 / -1
};

struct EquioscResult {
  bool ok;
  std::vector<EquioscPoint> points;  // alternating +-1 touch points found
};

// Chebyshev-style alternation certificate: sigma attains +-1 (within tol),
// alternating in sign, at >= K+1 points of the closed spectrum, and nowhere
// exceeds 1 + tol. Candidates are interval endpoints and interior stationary
// points of sigma.
EquioscResult check_equioscillation(const Poly& sigma, const SpectrumSet& s,
                                    double tol = 1e-9);

// Strong-optimality certificate: the positive preimage sigma^{-1}([-1,1])
// must lie within distance tol of the spectrum (the converse inclusion is the
// caller's feasibility). When both this and equioscillation hold, every
// Chebyshev composite T_n(sigma) is simultaneously minimax.
bool check_strong_optimality(const Poly& sigma, const SpectrumSet& s,
                             double tol = 1e-7);

// Closed-form optimal degree-2 polynomial for two equal-length intervals:
// sigma(lambda) = 2 (rho^2-R^2)/(1-R^2) (1 - lambda/L1)(1 - lambda/mu2) - 1.
Poly closed_form_sigma2(const SpectrumSet& s);

struct Sigma3Family {
  SpectrumSet spectrum;  // [mu, mu + r1 (L-mu)] u [L - r2 (L-mu), L]
  Poly sigma;            // cubic with sigma(mu1)=sigma(L1)=sigma(mu2)=1, sigma(L2)=-1
  double sigma0;
};

// Degree-3 equioscillating family on [mu, L] parametrized by the relative
// gap R in [0, 1): r1 = 1/2 - R/2 + (1-R^2)/4, r2 = 1/2 - R/2 - (1-R^2)/4.
Sigma3Family closed_form_sigma3(double mu, double L, double R);

}  // namespace cyclic
