#include "cyclic/linalg.hpp"

#include <cmath>

#include "cyclic/errors.hpp"

namespace cyclic {

Vector matvec(const Matrix& M, const Vector& x) {
  Vector y(M.rows, 0.0);
  for (int i = 0; i < M.rows; ++i) {
    double s = 0.0;
    const double* row = &M.a[static_cast<size_t>(i) * M.cols];
    for (int j = 0; j < M.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector matvec_t(const Matrix& M, const Vector& x) {
  Vector y(M.cols, 0.0);
  for (int i = 0; i < M.rows; ++i) {
    const double* row = &M.a[static_cast<size_t>(i) * M.cols];
    double xi = x[i];
    if (xi == 0.0) continue;
    for (int j = 0; j < M.cols; ++j) y[j] += row[j] * xi;
  }
  return y;
}

double dot(const Vector& x, const Vector& y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, const Vector& x, Vector& y) {
  for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vector solve_linear_system(std::vector<std::vector<double>> M, Vector rhs) {
  const size_t n = rhs.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < n; ++r) {
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    std::swap(M[col], M[piv]);
    std::swap(rhs[col], rhs[piv]);
    if (M[col][col] == 0.0) continue;  // singular direction, component stays 0
    for (size_t r = 0; r < n; ++r) {
      if (r == col || M[r][col] == 0.0) continue;
      double f = M[r][col] / M[col][col];
      for (size_t k = col; k < n; ++k) M[r][k] -= f * M[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  Vector x(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    if (M[i][i] != 0.0) x[i] = rhs[i] / M[i][i];
  }
  return x;
}

Vector solve_spd(const Matrix& A, const Vector& b) {
  const int n = A.rows;
  if (n != A.cols || static_cast<size_t>(n) != b.size()) {
    throw DegenerateInput("solve_spd: shape mismatch");
  }
  // Lower Cholesky factor, in place on a copy.
  Matrix L(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (!(s > 0.0)) throw NumericalError("solve_spd: matrix not positive definite");
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  // Forward then backward substitution.
  Vector y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= L(i, k) * y[k];
    y[i] = s / L(i, i);
  }
  Vector x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k < n; ++k) s -= L(k, i) * x[k];
    x[i] = s / L(i, i);
  }
  return x;
}

double power_iteration_sym(const std::function<Vector(const Vector&)>& apply,
                           int dim, int iters) {
  if (dim <= 0) throw DegenerateInput("power_iteration_sym: empty operator");
  // Fixed, slightly uneven start so symmetric cancellations are unlikely.
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = 1.0 + 0.01 * static_cast<double>(i % 7) / 7.0;
  }
  double inv = 1.0 / norm2(v);
  for (double& x : v) x *= inv;

  double eig = 0.0;
  for (int it = 0; it < iters; ++it) {
    Vector w = apply(v);
    double n = norm2(w);
    if (n == 0.0) return 0.0;
    eig = dot(v, w);
    for (size_t i = 0; i < w.size(); ++i) v[i] = w[i] / n;
  }
  return eig;
}

}  // namespace cyclic
