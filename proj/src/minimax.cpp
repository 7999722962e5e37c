#include "cyclic/minimax.hpp"

#include <algorithm>
#include <cmath>

#include "cyclic/errors.hpp"
#include "cyclic/simplex.hpp"

namespace cyclic {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Chebyshev-Lobatto nodes on [a, b], endpoints included.
void lobatto_nodes(double a, double b, int n, std::vector<double>* out) {
  if (n <= 1 || a == b) {
    out->push_back(a);
    if (b > a) out->push_back(b);
    return;
  }
  for (int j = 0; j < n; ++j) {
    double c = std::cos(kPi * static_cast<double>(j) / static_cast<double>(n - 1));
    out->push_back(0.5 * (a + b) + 0.5 * (b - a) * c);
  }
}

}  // namespace

SigmaLpResult solve_sigma_lp(const SpectrumSet& s, int K, int n_points) {
  if (K < 1) throw DegenerateInput("solve_sigma_lp: K must be >= 1");
  if (n_points < 4 * (K + 1)) {
    throw DegenerateInput("solve_sigma_lp: need at least 4(K+1) sample points");
  }

  const double total = std::max(s.length(), 1e-300);
  std::vector<double> nodes;
  for (const Interval& iv : s.intervals) {
    double frac = (s.length() > 0.0) ? (iv.hi - iv.lo) / total : 1.0;
    int n = std::max(K + 2, static_cast<int>(std::lround(frac * n_points)));
    lobatto_nodes(iv.lo, iv.hi, n, &nodes);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  // Express sigma in the Chebyshev basis on u = 2 lambda / L - 1, so every
  // constraint entry is T_i(u_j) in [-1, 1]; monomial rows make the bases at
  // clustered nodes too ill-conditioned for large sample counts.
  const double scale = s.L();
  const int nc = K + 1;
  const size_t nn = nodes.size();

  // Primal:  max sigma(0) = sum_i (-1)^i p_i  s.t.  |sum_i p_i T_i(u_j)| <= 1.
  // Solved through its dual,  min 1.y  s.t.  A y = b,  y >= 0,  whose simplex
  // multipliers are the primal coefficients p.
  std::vector<std::vector<double>> A(nc, std::vector<double>(2 * nn, 0.0));
  for (size_t j = 0; j < nn; ++j) {
    double u = 2.0 * nodes[j] / scale - 1.0;
    double tprev = 1.0;  // T_{i-1}(u)
    double tcur = u;     // T_i(u)
    A[0][j] = 1.0;
    A[0][nn + j] = -1.0;
    for (int i = 1; i < nc; ++i) {
      A[i][j] = tcur;
      A[i][nn + j] = -tcur;
      double tnext = 2.0 * u * tcur - tprev;
      tprev = tcur;
      tcur = tnext;
    }
  }
  std::vector<double> b(nc, 0.0);
  for (int i = 0; i < nc; ++i) b[i] = (i % 2 == 0) ? 1.0 : -1.0;  // T_i(-1)
  std::vector<double> cost(2 * nn, 1.0);

  LpResult lp = simplex_solve(A, b, cost);
  if (lp.status == LpStatus::Unbounded) {
    throw NumericalError("solve_sigma_lp: unbounded (spectrum touching zero?)");
  }
  if (lp.status == LpStatus::Infeasible) {
    // Dual infeasible means the primal objective is unbounded above, which
    // needs degenerate sampling; with Lobatto nodes this flags bad input.
    throw DegenerateInput("solve_sigma_lp: degenerate sample set");
  }

  // Rebuild sigma(lambda) = sum_i p_i T_i(2 lambda / L - 1) as a monomial Poly.
  Poly u_of_lambda({-1.0, 2.0 / scale});
  Poly tprev({1.0});
  Poly tcur = u_of_lambda;
  Poly sigma = lp.multipliers[0] * tprev;
  for (int i = 1; i < nc; ++i) {
    sigma = sigma + lp.multipliers[i] * tcur;
    Poly tnext = 2.0 * u_of_lambda * tcur - tprev;
    tprev = tcur;
    tcur = tnext;
  }

  SigmaLpResult out;
  out.sigma = std::move(sigma);
  out.sigma0 = out.sigma(0.0);
  out.points_used = static_cast<int>(nn);
  return out;
}

namespace {

// Endpoints plus interior stationary points, ascending.
std::vector<double> extremal_candidates(const Poly& sigma, const SpectrumSet& s) {
  std::vector<double> cand;
  Poly ds = sigma.derivative();
  for (const Interval& iv : s.intervals) {
    cand.push_back(iv.lo);
    if (iv.hi > iv.lo) {
      cand.push_back(iv.hi);
      if (ds.degree() >= 1) {
        for (const PolyRoot& r : poly_roots_in(ds, iv.lo, iv.hi, 1e-11)) {
          cand.push_back(r.x);
        }
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             cand.end());
  return cand;
}

}  // namespace

EquioscResult check_equioscillation(const Poly& sigma, const SpectrumSet& s,
                                    double tol) {
  const int K = sigma.degree();
  EquioscResult res;
  res.ok = false;

  std::vector<double> cand = extremal_candidates(sigma, s);
  int last_sign = 0;
  for (double lam : cand) {
    double v = sigma(lam);
    if (std::abs(v) > 1.0 + tol) return {false, {}};  // exceeds the band
    if (std::abs(v) < 1.0 - tol) continue;
    int sign = (v >= 0.0) ? +1 : -1;
    if (sign != last_sign) {
      res.points.push_back({lam, sign});
      last_sign = sign;
    }
  }
  res.ok = static_cast<int>(res.points.size()) >= K + 1;
  return res;
}

bool check_strong_optimality(const Poly& sigma, const SpectrumSet& s,
                             double tol) {
  if (sigma.degree() < 1) return false;

  // Push the search horizon out until |sigma| has clearly left the band,
  // then make sure it stays out on a geometric far-field probe.
  double hi = 2.0 * s.L();
  while (std::abs(sigma(hi)) <= 10.0 && hi < 1e8 * s.L()) hi *= 1.25;
  for (double x = hi; x < 1e8 * s.L(); x *= 2.0) {
    if (std::abs(sigma(x)) <= 1.0) return false;
  }

  Poly plus = sigma - Poly({1.0});
  Poly minus = sigma + Poly({1.0});
  std::vector<double> boundary{0.0, hi};
  for (const Poly* q : {&plus, &minus}) {
    for (const PolyRoot& r : poly_roots_in(*q, 0.0, hi, 1e-11)) {
      boundary.push_back(r.x);
    }
  }
  std::sort(boundary.begin(), boundary.end());

  // A segment between consecutive boundary points is inside the band iff the
  // midpoint is; every inside segment must be covered by the tol-inflated
  // spectrum.
  for (size_t i = 0; i + 1 < boundary.size(); ++i) {
    double a = boundary[i];
    double b = boundary[i + 1];
    if (b - a <= 2.0 * tol) continue;
    double mid = 0.5 * (a + b);
    if (std::abs(sigma(mid)) > 1.0) continue;
    bool covered = false;
    for (const Interval& iv : s.intervals) {
      if (a >= iv.lo - tol && b <= iv.hi + tol) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

Poly closed_form_sigma2(const SpectrumSet& s) {
  if (s.intervals.size() != 2) {
    throw UnsupportedShape("closed_form_sigma2: need exactly two intervals");
  }
  GapParams gp = gap_params(s);
  const double L1 = s.intervals[0].hi;
  const double mu2 = s.intervals[1].lo;
  const double c = 2.0 * (gp.rho * gp.rho - gp.R * gp.R) / (1.0 - gp.R * gp.R);
  // c (1 - l/L1)(1 - l/mu2) - 1, expanded.
  return Poly({c - 1.0, -c * (1.0 / L1 + 1.0 / mu2), c / (L1 * mu2)});
}

Sigma3Family closed_form_sigma3(double mu, double L, double R) {
  if (!(mu > 0.0) || !(L > mu)) {
    throw DegenerateInput("closed_form_sigma3: need 0 < mu < L");
  }
  if (!(R >= 0.0 && R < 1.0)) {
    throw DegenerateInput("closed_form_sigma3: need 0 <= R < 1");
  }
  const double r1 = 0.5 - 0.5 * R + 0.25 * (1.0 - R * R);
  const double r2 = 0.5 - 0.5 * R - 0.25 * (1.0 - R * R);
  const double span = L - mu;

  Sigma3Family fam;
  const double mu1 = mu;
  const double L1 = mu + r1 * span;
  const double mu2 = L - r2 * span;
  const double L2 = L;
  fam.spectrum = two_intervals(mu1, L1, mu2, L2);

  // 1 - 2 (l-mu1)(l-L1)(l-mu2) / ((L2-mu1)(L2-L1)(L2-mu2)).
  const double denom = (L2 - mu1) * (L2 - L1) * (L2 - mu2);
  Poly cubic = Poly({-mu1, 1.0}) * Poly({-L1, 1.0}) * Poly({-mu2, 1.0});
  fam.sigma = Poly({1.0}) - (2.0 / denom) * cubic;
  fam.sigma0 = fam.sigma(0.0);
  return fam;
}

}  // namespace cyclic
