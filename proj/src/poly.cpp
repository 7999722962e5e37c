#include "cyclic/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "cyclic/errors.hpp"

namespace cyclic {

Poly::Poly(std::vector<double> c) : coeffs(std::move(c)) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  trim();
}

void Poly::trim() {
  while (coeffs.size() > 1 && std::abs(coeffs.back()) <= kTrimTol) {
    coeffs.pop_back();
  }
}

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs.size() <= 1) return Poly{};
  std::vector<double> d(coeffs.size() - 1);
  for (size_t i = 1; i < coeffs.size(); ++i) {
    d[i - 1] = static_cast<double>(i) * coeffs[i];
  }
  return Poly(std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<double> c(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<double> c(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  std::vector<double> c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    for (size_t j = 0; j < b.coeffs.size(); ++j) {
      c[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return Poly(std::move(c));
}

Poly operator*(double s, const Poly& a) {
  std::vector<double> c = a.coeffs;
  for (double& v : c) v *= s;
  return Poly(std::move(c));
}

double cheb_T(int n, double x) {
  if (n < 0) throw DegenerateInput("cheb_T: negative degree");
  if (x < -1.0) {
    double v = cheb_T(n, -x);
    return (n % 2 == 0) ? v : -v;
  }
  if (x <= 1.0) return std::cos(static_cast<double>(n) * std::acos(x));
  double s = std::sqrt(x * x - 1.0);
  return 0.5 * (std::pow(x + s, n) + std::pow(x - s, n));
}

double cheb_U(int n, double x) {
  if (n < 0) throw DegenerateInput("cheb_U: negative degree");
  // Mirror to x >= 0 so acos stays in [0, pi/2]; near pi the quotient below
  // divides two near-zero sines and loses every digit.
  if (x < 0.0) {
    double v = cheb_U(n, -x);
    return (n % 2 == 0) ? v : -v;
  }
  if (x > 1.0) {
    double s = std::sqrt(x * x - 1.0);
    return (std::pow(x + s, n + 1) - std::pow(x - s, n + 1)) / (2.0 * s);
  }
  // sin((n+1)theta)/sin(theta); at theta ~ 0 use the limit n+1.
  if (1.0 - x < 1e-12) return static_cast<double>(n + 1);
  double theta = std::acos(x);
  return std::sin(static_cast<double>(n + 1) * theta) / std::sin(theta);
}

namespace {

// Shrink a sign-change bracket until it is tol-narrow and the residual is
// below the absolute scale tol * (1 + max |coeff|), capped at 90 halvings.
double bisect(const Poly& p, double a, double b, double fa, double tol,
              double res_tol) {
  for (int it = 0; it < 90; ++it) {
    double mid = 0.5 * (a + b);
    double fm = p(mid);
    if (b - a <= tol && std::abs(fm) <= res_tol) return mid;
    if (mid <= a || mid >= b) return mid;  // interval at double resolution
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<PolyRoot> poly_roots_in(const Poly& p, double lo, double hi,
                                    double tol, int grid_per_unit) {
  if (p.degree() < 1) throw DegenerateInput("poly_roots_in: degree < 1");
  if (!(lo < hi)) throw DegenerateInput("poly_roots_in: empty bracket");

  double max_coeff = 0.0;
  for (double c : p.coeffs) max_coeff = std::max(max_coeff, std::abs(c));
  const double res_tol = tol * (1.0 + max_coeff);

  long n = std::lround(std::ceil((hi - lo) * grid_per_unit));
  n = std::clamp(n, 256L, 1L << 20);
  const double step = (hi - lo) / static_cast<double>(n);

  std::vector<PolyRoot> roots;
  // A grid point can land exactly on a tangency, so a rediscovered root keeps
  // the larger multiplicity instead of being dropped.
  auto push_unique = [&](double x, int mult) {
    for (PolyRoot& r : roots) {
      if (std::abs(r.x - x) <= std::max(10.0 * tol, 1e-9 * (hi - lo))) {
        r.multiplicity = std::max(r.multiplicity, mult);
        return;
      }
    }
    roots.push_back({x, mult});
  };

  double prev_x = lo;
  double prev_f = p(lo);
  if (prev_f == 0.0) push_unique(lo, 1);
  for (long i = 1; i <= n; ++i) {
    double x = (i == n) ? hi : lo + step * static_cast<double>(i);
    double f = p(x);
    if (f == 0.0) {
      push_unique(x, 1);
    } else if ((prev_f < 0.0 && f > 0.0) || (prev_f > 0.0 && f < 0.0)) {
      push_unique(bisect(p, prev_x, x, prev_f, tol, res_tol), 1);
    }
    prev_x = x;
    prev_f = f;
  }

  // Tangencies: p touches zero where p' crosses and |p| is small.
  Poly dp = p.derivative();
  if (dp.degree() >= 1) {
    double qx = lo;
    double qf = dp(lo);
    for (long i = 1; i <= n; ++i) {
      double x = (i == n) ? hi : lo + step * static_cast<double>(i);
      double f = dp(x);
      if ((qf < 0.0 && f > 0.0) || (qf > 0.0 && f < 0.0) || f == 0.0) {
        double cand = (f == 0.0) ? x : bisect(dp, qx, x, qf, tol, res_tol);
        if (std::abs(p(cand)) <= res_tol) push_unique(cand, 2);
      }
      qx = x;
      qf = f;
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](const PolyRoot& a, const PolyRoot& b) { return a.x < b.x; });
  return roots;
}

}  // namespace cyclic
