#include "cyclic/rate.hpp"

#include <algorithm>
#include <cmath>

#include "cyclic/errors.hpp"

namespace cyclic {

void validate_cycle(const CycleParams& p) {
  if (p.h.empty()) throw DegenerateInput("cycle: K must be >= 1");
  for (double h : p.h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw DegenerateInput("cycle: step-sizes must be positive");
    }
  }
  if (!(p.m >= 0.0) || !(p.m < 1.0)) {
    throw InvalidMomentum("cycle: momentum must satisfy 0 <= m < 1");
  }
}

double sigma_cycle(const CycleParams& p, double lambda) {
  validate_cycle(p);
  if (!(p.m > 0.0)) {
    throw InvalidMomentum("sigma_cycle: trace formula needs m > 0");
  }
  const double rs = std::sqrt(p.m);
  const int K = p.K();
  // Product of the K companion factors; entries kept explicitly.
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  for (int i = 1; i <= K; ++i) {
    double top = (1.0 + p.m - p.h[K - i] * lambda) / rs;
    double na = a * top + b;
    double nb = -a;
    double nc = c * top + d;
    double nd = -c;
    a = na;
    b = nb;
    c = nc;
    d = nd;
  }
  return 0.5 * (a + d);
}

Poly sigma_poly(const CycleParams& p) {
  validate_cycle(p);
  if (!(p.m > 0.0)) {
    throw InvalidMomentum("sigma_poly: trace formula needs m > 0");
  }
  const double rs = std::sqrt(p.m);
  const int K = p.K();
  Poly a({1.0}), b({0.0}), c({0.0}), d({1.0});
  for (int i = 1; i <= K; ++i) {
    Poly top({(1.0 + p.m) / rs, -p.h[K - i] / rs});
    Poly na = a * top + b;
    Poly nb = -1.0 * a;
    Poly nc = c * top + d;
    Poly nd = -1.0 * c;
    a = na;
    b = nb;
    c = nc;
    d = nd;
  }
  return 0.5 * (a + d);
}

namespace {

SigmaSup sup_over_candidates(const CycleParams& p,
                             const std::vector<double>& candidates) {
  double best = -1.0;
  for (double lam : candidates) best = std::max(best, std::abs(sigma_cycle(p, lam)));
  // Witness is the smallest candidate attaining the sup (up to rounding).
  const double slack = 1e-12 * (1.0 + best);
  for (double lam : candidates) {
    if (std::abs(sigma_cycle(p, lam)) >= best - slack) return {best, lam};
  }
  return {best, candidates.front()};
}

}  // namespace

SigmaSup sigma_sup(const CycleParams& p, const SpectrumSet& s) {
  validate_cycle(p);
  const int K = p.K();
  std::vector<double> candidates;
  for (const Interval& iv : s.intervals) {
    candidates.push_back(iv.lo);
    if (iv.hi > iv.lo) candidates.push_back(iv.hi);
  }

  if (K == 2) {
    double vertex = (1.0 + p.m) * (p.h[0] + p.h[1]) / (2.0 * p.h[0] * p.h[1]);
    if (s.contains(vertex)) candidates.push_back(vertex);
  } else if (K >= 3) {
    Poly dsigma = sigma_poly(p).derivative();
    if (dsigma.degree() >= 1) {
      for (const Interval& iv : s.intervals) {
        if (!(iv.hi > iv.lo)) continue;
        for (const PolyRoot& r : poly_roots_in(dsigma, iv.lo, iv.hi, 1e-11)) {
          candidates.push_back(r.x);
        }
      }
    }
  }

  std::sort(candidates.begin(), candidates.end());
  return sup_over_candidates(p, candidates);
}

RateReport rate_factor(double sigma_star, double m, int K) {
  if (!(m > 0.0) || !(m < 1.0)) {
    throw InvalidMomentum("rate_factor: momentum must satisfy 0 < m < 1");
  }
  if (K < 1) throw DegenerateInput("rate_factor: K must be >= 1");
  RateReport rep;
  rep.sigma_star = sigma_star;
  const double rs = std::sqrt(m);
  const double divergence_edge =
      (1.0 + std::pow(m, K)) / (2.0 * std::pow(rs, K));
  // Tuned cycles sit on the robust boundary sigma* = 1; rounding noise there
  // would be amplified by sqrt(sigma*^2 - 1), so snap within 1e-12.
  if (sigma_star <= 1.0 + 1e-12 * std::max(1.0, std::abs(sigma_star))) {
    rep.regime = Regime::Robust;
    rep.rate = rs;
  } else {
    double inflate =
        std::pow(sigma_star + std::sqrt(sigma_star * sigma_star - 1.0),
                 1.0 / static_cast<double>(K));
    rep.regime =
        (sigma_star < divergence_edge) ? Regime::Convergent : Regime::Divergent;
    rep.rate = rs * inflate;
  }
  return rep;
}

RateReport rate_report(const CycleParams& p, const SpectrumSet& s) {
  validate_cycle(p);
  if (p.m == 0.0) {
    // Plain gradient descent; the residual polynomial is (1 - h lambda)^t.
    if (p.K() != 1) {
      throw InvalidMomentum("rate_report: m = 0 is only defined for K = 1");
    }
    double at_mu = std::abs(1.0 - p.h[0] * s.mu());
    double at_L = std::abs(1.0 - p.h[0] * s.L());
    RateReport rep;
    rep.sigma_star = std::max(at_mu, at_L);
    rep.witness_lambda = (at_mu >= at_L) ? s.mu() : s.L();
    rep.rate = rep.sigma_star;
    rep.regime = (rep.rate < 1.0) ? Regime::Convergent : Regime::Divergent;
    return rep;
  }
  SigmaSup sup = sigma_sup(p, s);
  RateReport rep = rate_factor(sup.sigma_star, p.m, p.K());
  rep.witness_lambda = sup.witness_lambda;
  return rep;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Robust:
      return "Robust";
    case Regime::Convergent:
      return "Convergent";
    default:
      return "Divergent";
  }
}

OptimalK2 optimal_rate_K2(const GapParams& gp, int t) {
  if (t < 0 || t % 2 != 0) {
    throw DegenerateInput("optimal_rate_K2: t must be even and >= 0");
  }
  const double rho2 = gp.rho * gp.rho;
  const double R2 = gp.R * gp.R;
  OptimalK2 out;
  out.rate = (std::sqrt(rho2 - R2) - std::sqrt(rho2 - 1.0)) / std::sqrt(1.0 - R2);
  out.bound = std::pow(out.rate, t) *
              (1.0 + t * std::sqrt((rho2 - 1.0) / (rho2 - R2)));
  return out;
}

double asymptotic_expansion(double R, double kappa, int K) {
  if (!(R >= 0.0) || !(R < 1.0)) throw DegenerateInput("expansion: need 0 <= R < 1");
  if (!(kappa > 0.0) || !(kappa < 1.0)) {
    throw DegenerateInput("expansion: need 0 < kappa < 1");
  }
  const double rk = std::sqrt(kappa);
  if (K == 2) return 1.0 - 2.0 * rk / std::sqrt(1.0 - R * R);
  if (K == 3) {
    return 1.0 - 2.0 * rk * std::sqrt((1.0 - R * R / 9.0) / (1.0 - R * R));
  }
  throw UnsupportedShape("expansion: closed form known for K = 2 and K = 3 only");
}

}  // namespace cyclic
