#pragma once

#include <vector>

namespace cyclic {

// Dense univariate polynomial, coefficients in ascending powers.
// Canonical form: trailing coefficients with |c| <= kTrimTol are dropped
// (degree 0 is always kept), so degree() is meaningful after arithmetic.
struct Poly {
  static constexpr double kTrimTol = 1e-14;

  std::vector<double> coeffs{0.0};

  Poly() = default;
  explicit Poly(std::vector<double> c);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double x) const;  // Horner evaluation
  Poly derivative() const;

  void trim();
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(double s, const Poly& a);

// Chebyshev polynomials of the first/second kind. Inside [-1, 1] the closed
// trigonometric forms are used; outside, the hyperbolic forms, so large n and
// |x| > 1 do not overflow the three-term recurrence's error growth.
double cheb_T(int n, double x);
double cheb_U(int n, double x);

struct PolyRoot {
  double x;
  int multiplicity;  // 1 for a sign change, 2 for a tangency
};

// All real roots of p in [lo, hi], ascending. Sign changes on a dense grid
// (grid_per_unit subintervals per unit length) are bisected to width <= tol;
// tangential (even-multiplicity) roots are recovered from sign changes of p'
// and accepted when |p| is small there.
std::vector<PolyRoot> poly_roots_in(const Poly& p, double lo, double hi,
                                    double tol = 1e-12,
                                    int grid_per_unit = 4096);

}  // namespace cyclic
