#pragma once

#include <cstdint>

#include "cyclic/minimax.hpp"
#include "cyclic/poly.hpp"
#include "cyclic/rate.hpp"
#include "cyclic/spectrum.hpp"

namespace cyclic {

// Heavy-ball tuning for a single interval [mu, L]:
// m = ((1 - sqrt(kappa)) / (1 + sqrt(kappa)))^2, h = 2 (1+m) / (L + mu).
CycleParams tune_phb(double mu, double L);

// Closed-form optimal two-step cycle for one interval or two equal-length
// intervals. Returns h = [(1+m)/L1, (1+m)/mu2] (the order the first step
// h_0/(1+m) = 1/L1 expects); for one interval the midpoint split L1 = mu2 =
// (mu+L)/2 reduces this to tune_phb.
CycleParams tune_K2(const SpectrumSet& s);

// Momentum that makes the cycle's sigma(0) equal the target:
// m = (sigma0 - sqrt(sigma0^2 - 1))^{2/K}; sigma0 >= 1 required.
double momentum_from_sigma0(double sigma0, int K);

struct RecoverOptions {
  int max_newton_iters = 200;
  int restart_budget = 64;
  uint64_t seed = 0x9e3779b97f4a7c15ull;
};

// Invert the coefficient map: find step-sizes h_0..h_{K-1} whose cycle
// polynomial matches the degree-K target sigma (momentum is pinned by
// sigma(0)). For K <= 3 the trace is fully symmetric in the steps, so the
// elementary symmetric functions are linear in the coefficients and the steps
// come out of a quadratic/cubic solve; K = 4 reduces to a one-parameter
// feasibility scan; K >= 5 falls back to damped Newton from root-derived and
// seeded random starts. Not every target is realizable over the reals: the
// momentum forced by sigma(0) can leave the symmetric system with complex
// roots, in which case this throws NoSolutionFound. The accepted answer
// always satisfies ||coeff residual||_inf <= tol * max|coeff(sigma)|.
CycleParams recover_cycle(const Poly& sigma, int K, double tol = 1e-10,
                          const RecoverOptions& opts = {});

struct TuneResult {
  CycleParams params;
  RateReport report;
  Poly sigma;
};

// LP design + momentum extraction + cycle recovery + certification:
// the recovered cycle must satisfy sigma_sup <= 1 + 1e-6 on the spectrum
// (else CertificationFailed). The reported rate is sqrt(m) =
// (sigma0 - sqrt(sigma0^2 - 1))^{1/K}.
TuneResult tune_general(const SpectrumSet& s, int K, int lp_points = 2000);

}  // namespace cyclic
