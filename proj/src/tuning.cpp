#include "cyclic/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cyclic/errors.hpp"
#include "cyclic/linalg.hpp"
#include "cyclic/rng.hpp"

namespace cyclic {

CycleParams tune_phb(double mu, double L) {
  if (!(mu > 0.0) || !(L > mu)) throw DegenerateInput("tune_phb: need 0 < mu < L");
  const double rk = std::sqrt(mu / L);
  const double m = ((1.0 - rk) / (1.0 + rk)) * ((1.0 - rk) / (1.0 + rk));
  return CycleParams{{2.0 * (1.0 + m) / (L + mu)}, m};
}

CycleParams tune_K2(const SpectrumSet& s) {
  double L1, mu2;
  GapParams gp = gap_params(s);  // enforces one or two equal intervals
  if (s.intervals.size() == 1) {
    L1 = mu2 = 0.5 * (gp.mu + gp.L);
  } else {
    L1 = s.intervals[0].hi;
    mu2 = s.intervals[1].lo;
  }
  const double rho2 = gp.rho * gp.rho;
  const double R2 = gp.R * gp.R;
  const double root = (std::sqrt(rho2 - R2) - std::sqrt(rho2 - 1.0)) /
                      std::sqrt(1.0 - R2);
  const double m = root * root;
  return CycleParams{{(1.0 + m) / L1, (1.0 + m) / mu2}, m};
}

double momentum_from_sigma0(double sigma0, int K) {
  if (K < 1) throw DegenerateInput("momentum_from_sigma0: K must be >= 1");
  if (!(sigma0 >= 1.0)) {
    throw DegenerateInput("momentum_from_sigma0: sigma(0) must be >= 1");
  }
  double base = sigma0 - std::sqrt(sigma0 * sigma0 - 1.0);
  return std::pow(base, 2.0 / static_cast<double>(K));
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lexicographically smallest cycle among rotations and reversals; these are
// exactly the reorderings that leave the trace polynomial unchanged, so the
// canonical form is a pure tie-break. For K <= 3 it is ascending order.
std::vector<double> canonical_cycle(std::vector<double> h) {
  const size_t K = h.size();
  std::vector<double> best = h;
  std::vector<double> cur = h;
  for (int rev = 0; rev < 2; ++rev) {
    for (size_t r = 0; r < K; ++r) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      if (cur < best) best = cur;
    }
    std::reverse(cur.begin(), cur.end());
  }
  return best;
}

struct Candidate {
  std::vector<double> h;
  double residual;
};

// Roots of z^2 - b z + c. A discriminant within the snap window of zero
// collapses to a double root (realizability boundary); decisively negative
// means no real pair.
bool quad_roots(double b, double c, double out[2]) {
  double disc = b * b - 4.0 * c;
  if (disc < -1e-9 * (b * b + 4.0 * std::abs(c))) return false;
  double s = std::sqrt(std::max(0.0, disc));
  out[0] = 0.5 * (b - s);
  out[1] = 0.5 * (b + s);
  return true;
}

// All-real roots of z^3 - e1 z^2 + e2 z - e3 via the trigonometric form on
// the depressed cubic. Same snap convention as quad_roots; false when the
// discriminant is decisively negative (one real root, complex pair).
bool cubic_roots(double e1, double e2, double e3, double out[3]) {
  double p = e2 - e1 * e1 / 3.0;
  double q = -2.0 * e1 * e1 * e1 / 27.0 + e1 * e2 / 3.0 - e3;
  double disc = -4.0 * p * p * p - 27.0 * q * q;
  double mag = 4.0 * std::abs(p * p * p) + 27.0 * q * q;
  if (disc < -1e-9 * mag) return false;
  if (!(p < 0.0)) {
    // Boundary case: p ~ 0 forces q ~ 0, a triple root at e1/3.
    out[0] = out[1] = out[2] = e1 / 3.0;
    return true;
  }
  double r = 2.0 * std::sqrt(-p / 3.0);
  double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
  double phi = std::acos(arg);
  for (int k = 0; k < 3; ++k) {
    out[k] = r * std::cos((phi - 2.0 * kPi * k) / 3.0) + e1 / 3.0;
  }
  return true;
}

// The K-cycle trace is symmetric in the steps for K <= 3, so the elementary
// symmetric functions e_i(h) are linear in the target coefficients:
//   K=1:  c1 = -e1 / (2 sqrt(m))
//   K=2:  c1 = -e1 a / (2m),              c2 = e2 / (2m)
//   K=3:  c1 = -e1 (a^2 - m) / (2m^{3/2}), c2 = e2 a / (2m^{3/2}),
//         c3 = -e3 / (2m^{3/2})                        with a = 1 + m.
// Steps are then the roots of z^K - e1 z^{K-1} + ... Realizability over the
// reals is not guaranteed: the momentum is already pinned by sigma(0).
bool symmetric_recovery(const Poly& sigma, int K, double m,
                        std::vector<double>* h) {
  const double a = 1.0 + m;
  const double* c = sigma.coeffs.data();
  if (K == 1) {
    h->assign(1, -2.0 * c[1] * std::sqrt(m));
    return true;
  }
  if (K == 2) {
    double e1 = -2.0 * c[1] * m / a;
    double e2 = 2.0 * c[2] * m;
    double r[2];
    if (!quad_roots(e1, e2, r)) return false;
    h->assign(r, r + 2);
    return true;
  }
  double m32 = m * std::sqrt(m);
  double e1 = -2.0 * c[1] * m32 / (a * a - m);
  double e2 = 2.0 * c[2] * m32 / a;
  double e3 = -2.0 * c[3] * m32;
  double r[3];
  if (!cubic_roots(e1, e2, e3, r)) return false;
  h->assign(r, r + 3);
  return true;
}

// For K=4 the trace depends on e_1..e_4 of the steps plus one extra necklace
// invariant w = (h_0+h_2)(h_1+h_3):
//   c1 = -e1 a (a^2 - 2m) / (2m^2),  c2 = (e2 a^2 / m - w) / (2m),
//   c3 = -e3 a / (2m^2),             c4 = e4 / (2m^2).
// e1, e3, e4 are pinned; for each trial e2 the pair sums p,q and pair
// products u,v follow (u+v and qu+pv are linear), leaving one consistency
// equation uv = e4 to root-find in e2.
bool k4_recovery(const Poly& sigma, double m, std::vector<double>* h_out) {
  const double a = 1.0 + m;
  const double* c = sigma.coeffs.data();
  const double m2 = m * m;
  const double e1 = -2.0 * c[1] * m2 / (a * (a * a - 2.0 * m));
  const double e3 = -2.0 * c[3] * m2 / a;
  const double e4 = 2.0 * c[4] * m2;
  if (!(e1 > 0.0)) return false;

  // uv - e4 as a function of e2; NaN marks an infeasible trial point.
  auto mismatch = [&](double e2, std::vector<double>* h) {
    double w = a * a * e2 / m - 2.0 * c[2] * m;
    double pq[2];
    if (!quad_roots(e1, w, pq)) return std::numeric_limits<double>::quiet_NaN();
    double p = pq[1], q = pq[0];
    double s1 = e2 - w;  // u + v
    double det = q - p;
    double u, v;
    if (std::abs(det) < 1e-14 * (std::abs(p) + std::abs(q))) {
      u = v = 0.5 * s1;  // balanced pairs
    } else {
      u = (e3 - p * s1) / det;
      v = s1 - u;
    }
    if (h != nullptr) {
      double h13[2], h24[2];
      if (!quad_roots(p, u, h13) || !quad_roots(q, v, h24)) return
          std::numeric_limits<double>::quiet_NaN();
      *h = {h13[0], h24[0], h13[1], h24[1]};  // opposite positions share a pair
    }
    return u * v - e4;
  };

  // Maclaurin bounds e2 <= 3 e1^2 / 8 for positive steps; scan with margin.
  const int n_scan = 4096;
  const double e2_hi = 0.5 * e1 * e1;
  double prev_f = std::numeric_limits<double>::quiet_NaN();
  double prev_x = 0.0;
  for (int i = 1; i <= n_scan; ++i) {
    double x = e2_hi * static_cast<double>(i) / n_scan;
    double f = mismatch(x, nullptr);
    if (std::isfinite(f) && std::isfinite(prev_f) &&
        ((f <= 0.0) != (prev_f <= 0.0))) {
      double lo = prev_x, hi = x;
      double flo = prev_f;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = mismatch(mid, nullptr);
        if (!std::isfinite(fm)) break;
        if ((fm <= 0.0) == (flo <= 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      std::vector<double> h;
      double fr = mismatch(0.5 * (lo + hi), &h);
      if (std::isfinite(fr) && h.size() == 4) {
        bool positive = true;
        for (double v : h) positive = positive && v > 0.0;
        if (positive) {
          *h_out = std::move(h);
          return true;
        }
      }
    }
    prev_f = f;
    prev_x = x;
  }
  return false;
}

}  // namespace

CycleParams recover_cycle(const Poly& sigma, int K, double tol,
                          const RecoverOptions& opts) {
  if (K < 1) throw DegenerateInput("recover_cycle: K must be >= 1");
  if (sigma.degree() != K) {
    throw DegenerateInput("recover_cycle: target degree " +
                          std::to_string(sigma.degree()) + " != K");
  }
  const double sigma0 = sigma(0.0);
  const double m = momentum_from_sigma0(sigma0, K);
  if (!(m > 0.0) || !(m < 1.0)) {
    throw NoSolutionFound("recover_cycle: sigma(0) pins momentum outside (0,1)");
  }

  double scale = 0.0;
  for (double c : sigma.coeffs) scale = std::max(scale, std::abs(c));

  auto residual = [&](const std::vector<double>& h) {
    Poly p = sigma_poly(CycleParams{h, m});
    Vector r(K, 0.0);
    for (int i = 1; i <= K; ++i) {
      double got = (i <= p.degree()) ? p.coeffs[i] : 0.0;
      double want = (i <= sigma.degree()) ? sigma.coeffs[i] : 0.0;
      r[i - 1] = got - want;
    }
    return r;
  };
  auto res_norm = [](const Vector& r) {
    double n = 0.0;
    for (double v : r) n = std::max(n, std::abs(v));
    return n;
  };

  // Exact symmetric-function recovery first; Newton below only mops up K >= 5
  // and boundary cases the snap windows misjudged.
  {
    std::vector<double> h;
    bool got = (K <= 3) ? symmetric_recovery(sigma, K, m, &h)
                        : (K == 4 ? k4_recovery(sigma, m, &h) : false);
    if (got) {
      bool positive = true;
      for (double v : h) positive = positive && v > 0.0 && std::isfinite(v);
      if (positive && res_norm(residual(h)) <= tol * scale) {
        return CycleParams{canonical_cycle(h), m};
      }
    }
  }

  // Newton from one start; returns the reached residual norm.
  auto polish = [&](std::vector<double> h, std::vector<double>* out) {
    Vector F = residual(h);
    double fn = res_norm(F);
    for (int it = 0; it < opts.max_newton_iters && fn > tol * scale; ++it) {
      std::vector<std::vector<double>> J(K, std::vector<double>(K, 0.0));
      for (int j = 0; j < K; ++j) {
        double step = std::min(1e-7 * (1.0 + std::abs(h[j])), 0.5 * h[j]);
        std::vector<double> hp = h, hm = h;
        hp[j] += step;
        hm[j] -= step;
        Vector Fp = residual(hp);
        Vector Fm = residual(hm);
        for (int i = 0; i < K; ++i) J[i][j] = (Fp[i] - Fm[i]) / (2.0 * step);
      }
      Vector delta = solve_linear_system(std::move(J), F);
      bool moved = false;
      double alpha = 1.0;
      for (int halving = 0; halving < 40; ++halving, alpha *= 0.5) {
        std::vector<double> trial = h;
        bool positive = true;
        for (int j = 0; j < K; ++j) {
          trial[j] -= alpha * delta[j];
          if (!(trial[j] > 0.0) || !std::isfinite(trial[j])) {
            positive = false;
            break;
          }
        }
        if (!positive) continue;
        Vector Ft = residual(trial);
        double ftn = res_norm(Ft);
        if (ftn < fn) {
          h = std::move(trial);
          F = std::move(Ft);
          fn = ftn;
          moved = true;
          break;
        }
      }
      if (!moved) break;  // stalled
    }
    *out = std::move(h);
    return fn;
  };

  // Deterministic starts: assignments of the roots of sigma + 1 (with
  // multiplicity) through h_i = (1+m)/r_i. Distinct permutations collapse to
  // their canonical cycle before running Newton.
  double hi = 2.0 * std::max(1.0, std::abs(sigma.coeffs[0]));
  while (std::abs(sigma(hi)) <= 10.0 && hi < 1e12) hi *= 1.5;
  std::vector<double> root_multiset;
  for (const PolyRoot& r : poly_roots_in(sigma + Poly({1.0}), 0.0, hi, 1e-11)) {
    for (int c = 0; c < r.multiplicity && (int)root_multiset.size() < K; ++c) {
      if (r.x > 0.0) root_multiset.push_back(r.x);
    }
  }
  // Band edges of sigma^{-1}([-1,1]) bound the plausible step-size range for
  // randomized restarts.
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  Poly band_lo = sigma + Poly({1.0});
  Poly band_hi = sigma - Poly({1.0});
  for (const Poly* q : {&band_lo, &band_hi}) {
    for (const PolyRoot& r : poly_roots_in(*q, 0.0, hi, 1e-11)) {
      if (r.x > 0.0) {
        rmin = std::min(rmin, r.x);
        rmax = std::max(rmax, r.x);
      }
    }
  }
  if (!(rmax > rmin) || !std::isfinite(rmin)) {
    rmin = 1.0;
    rmax = std::max(2.0, hi);
  }

  const size_t n_roots = root_multiset.size();
  for (size_t i = n_roots; n_roots > 0 && i < static_cast<size_t>(K); ++i) {
    root_multiset.push_back(root_multiset[i % n_roots]);
  }
  std::sort(root_multiset.begin(), root_multiset.end());

  std::vector<std::vector<double>> starts;
  if (static_cast<int>(root_multiset.size()) == K) {
    std::vector<double> perm = root_multiset;
    do {
      std::vector<double> h(K);
      for (int i = 0; i < K; ++i) h[i] = (1.0 + m) / perm[i];
      h = canonical_cycle(h);
      if (std::find(starts.begin(), starts.end(), h) == starts.end()) {
        starts.push_back(h);
      }
      if (starts.size() >= 256) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  Rng rng(opts.seed);
  const double h_lo = (1.0 + m) / rmax;
  const double h_hi = (1.0 + m) / rmin;
  for (int r = 0; r < opts.restart_budget; ++r) {
    std::vector<double> h(K);
    for (int i = 0; i < K; ++i) h[i] = rng.log_uniform(h_lo, h_hi);
    starts.push_back(std::move(h));
  }

  Candidate best{{}, std::numeric_limits<double>::infinity()};
  for (const std::vector<double>& start : starts) {
    std::vector<double> h;
    double fn = polish(start, &h);
    if (fn < best.residual ||
        (fn == best.residual && canonical_cycle(h) < best.h)) {
      best = {canonical_cycle(h), fn};
    }
    if (best.residual <= tol * scale) break;
  }

  if (!(best.residual <= tol * scale)) {
    // Genuine infeasibility is common: sigma(0) pins the momentum, and the
    // remaining symmetric system can have complex roots.
    throw NoSolutionFound(
        "recover_cycle: no real step-size cycle matches the target polynomial "
        "(best residual " +
        std::to_string(best.residual) + ")");
  }
  return CycleParams{best.h, m};
}

TuneResult tune_general(const SpectrumSet& s, int K, int lp_points) {
  SigmaLpResult lp = solve_sigma_lp(s, K, lp_points);
  CycleParams params = recover_cycle(lp.sigma, K);

  SigmaSup sup = sigma_sup(params, s);
  if (!(sup.sigma_star <= 1.0 + 1e-6)) {
    throw CertificationFailed(
        "tune_general: recovered cycle exceeds the robust band, sup = " +
        std::to_string(sup.sigma_star));
  }

  TuneResult out;
  out.params = params;
  out.sigma = lp.sigma;
  out.report.sigma_star = sup.sigma_star;
  out.report.witness_lambda = sup.witness_lambda;
  out.report.regime = Regime::Robust;
  out.report.rate = std::sqrt(params.m);
  return out;
}

}  // namespace cyclic
