#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cyclic {

using Vector = std::vector<double>;

// Dense row-major matrix; just enough plumbing for the objective fixtures.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }
};

Vector matvec(const Matrix& M, const Vector& x);    // M x
Vector matvec_t(const Matrix& M, const Vector& x);  // M' x

double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);  // Euclidean
void axpy(double alpha, const Vector& x, Vector& y);

// Gaussian elimination with partial pivoting; M is consumed.
Vector solve_linear_system(std::vector<std::vector<double>> M, Vector rhs);

// Solve A x = b for symmetric positive definite A via Cholesky.
Vector solve_spd(const Matrix& A, const Vector& b);

// Largest eigenvalue of a symmetric PSD operator given by its matvec.
// Deterministic start vector, fixed iteration count: reproducible.
double power_iteration_sym(const std::function<Vector(const Vector&)>& apply,
                           int dim, int iters = 200);

}  // namespace cyclic
