#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclic/linalg.hpp"

namespace cyclic {

// A twice-differentiable objective the solvers can run on. Quadratics carry
// their minimizer so traces can report exact distances; the logistic loss
// reports gradient norms instead.
class ObjectiveInstance {
 public:
  enum class Kind { DiagQuadratic, DenseQuadratic, Logistic };

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_quadratic() const { return kind_ != Kind::Logistic; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Vector hessian_vec(const Vector& x, const Vector& v) const;
  Matrix hessian(const Vector& x) const;

  // Known minimizer (quadratics only).
  const std::optional<Vector>& x_star() const { return x_star_; }
  double f_star() const { return f_star_; }

  // Diagonal quadratic spectrum when available.
  const std::vector<double>& diag_eigs() const { return eigs_; }

  friend ObjectiveInstance make_diag_quadratic(const std::vector<double>& eigs,
                                               uint64_t seed);
  friend ObjectiveInstance make_least_squares(const Matrix& A, const Vector& b,
                                              double reg_scale);
  friend ObjectiveInstance make_logistic(const Matrix& A,
                                         const std::vector<int>& labels,
                                         double reg_scale);

 private:
  Kind kind_ = Kind::DiagQuadratic;
  int dim_ = 0;
  std::vector<double> eigs_;       // diagonal quadratic
  Matrix H_;                       // dense quadratic
  Matrix A_;                       // data matrix (logistic / least squares)
  std::vector<double> labels_;     // +-1 labels or regression targets
  double reg_ = 0.0;               // ridge coefficient (lambda)
  std::optional<Vector> x_star_;
  double f_star_ = 0.0;
};

// f(x) = 1/2 sum_i eigs_i (x_i - x*_i)^2 with a seeded Gaussian x*.
ObjectiveInstance make_diag_quadratic(const std::vector<double>& eigs,
                                      uint64_t seed);

// Data matrix A = X Z: X seeded Gaussian (m_rows x n), Z diagonal scaling the
// first `spikes` columns by `factor`. The Gram matrix A'A / rows then shows
// `spikes` outlier eigenvalues above the bulk.
Matrix make_spiked_covariance(int n, int m_rows, int spikes, double factor,
                              uint64_t seed);

// Ridge least squares: f(x) = 1/(2n) ||A x - b||^2 + lambda ||x||^2 with
// lambda = reg_scale * ||A||^2 (spectral norm by power iteration). The
// minimizer is computed at construction.
ObjectiveInstance make_least_squares(const Matrix& A, const Vector& b,
                                     double reg_scale);

// Ridge logistic regression with labels in {-1, +1}:
// f(x) = 1/n sum_i log(1 + exp(-b_i a_i.x)) + lambda ||x||^2,
// lambda = reg_scale * ||A||^2. Gradient 1/n A'g + 2 lambda x and Hessian
// 1/n A'DA + 2 lambda I with D_ii = s_i (1 - s_i).
ObjectiveInstance make_logistic(const Matrix& A, const std::vector<int>& labels,
                                double reg_scale);

// Seeded +-1 labels via sign(A x_tilde) with Gaussian x_tilde.
std::vector<int> make_sign_labels(const Matrix& A, uint64_t seed);

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Sweeps until the off-diagonal Frobenius mass is below 1e-12 ||M||_F.
std::vector<double> sym_eigvals(const Matrix& M);

// Minimizer search. Quadratics return the stored x*. The logistic path runs
// gradient descent with step 1/L_est until ||grad|| <= tol, where L_est is
// the top Hessian eigenvalue at the current point, refreshed every 100 steps.
Vector find_optimum(const ObjectiveInstance& obj, double tol = 1e-10,
                    long max_iters = 2000000);

}  // namespace cyclic
