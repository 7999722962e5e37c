#include "cyclic/problems.hpp"

#include <algorithm>
#include <cmath>

#include "cyclic/errors.hpp"
#include "cyclic/rng.hpp"

namespace cyclic {

namespace {

// log(1 + exp(-u)) without overflow for large |u|.
double log1p_exp_neg(double u) {
  if (u >= 0.0) return std::log1p(std::exp(-u));
  return -u + std::log1p(std::exp(u));
}

double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  double e = std::exp(u);
  return e / (1.0 + e);
}

double spectral_norm(const Matrix& A) {
  auto gram = [&](const Vector& v) { return matvec_t(A, matvec(A, v)); };
  double top = power_iteration_sym(gram, A.cols);
  return std::sqrt(std::max(top, 0.0));
}

}  // namespace

double ObjectiveInstance::value(const Vector& x) const {
  switch (kind_) {
    case Kind::DiagQuadratic: {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double d = x[i] - (*x_star_)[i];
        s += eigs_[i] * d * d;
      }
      return 0.5 * s + f_star_;
    }
    case Kind::DenseQuadratic: {
      Vector d(dim_);
      for (int i = 0; i < dim_; ++i) d[i] = x[i] - (*x_star_)[i];
      return 0.5 * dot(d, matvec(H_, d)) + f_star_;
    }
    case Kind::Logistic: {
      Vector z = matvec(A_, x);
      double s = 0.0;
      for (size_t i = 0; i < z.size(); ++i) s += log1p_exp_neg(labels_[i] * z[i]);
      return s / static_cast<double>(A_.rows) + reg_ * dot(x, x);
    }
  }
  return 0.0;
}

Vector ObjectiveInstance::gradient(const Vector& x) const {
  switch (kind_) {
    case Kind::DiagQuadratic: {
      Vector g(dim_);
      for (int i = 0; i < dim_; ++i) g[i] = eigs_[i] * (x[i] - (*x_star_)[i]);
      return g;
    }
    case Kind::DenseQuadratic: {
      Vector d(dim_);
      for (int i = 0; i < dim_; ++i) d[i] = x[i] - (*x_star_)[i];
      return matvec(H_, d);
    }
    case Kind::Logistic: {
      Vector z = matvec(A_, x);
      Vector w(z.size());
      for (size_t i = 0; i < z.size(); ++i) {
        w[i] = -labels_[i] * sigmoid(-labels_[i] * z[i]);
      }
      Vector g = matvec_t(A_, w);
      double inv_n = 1.0 / static_cast<double>(A_.rows);
      for (int i = 0; i < dim_; ++i) g[i] = g[i] * inv_n + 2.0 * reg_ * x[i];
      return g;
    }
  }
  return {};
}

Vector ObjectiveInstance::hessian_vec(const Vector& x, const Vector& v) const {
  switch (kind_) {
    case Kind::DiagQuadratic: {
      Vector y(dim_);
      for (int i = 0; i < dim_; ++i) y[i] = eigs_[i] * v[i];
      return y;
    }
    case Kind::DenseQuadratic:
      return matvec(H_, v);
    case Kind::Logistic: {
      Vector z = matvec(A_, x);
      Vector av = matvec(A_, v);
      for (size_t i = 0; i < av.size(); ++i) {
        double s = sigmoid(labels_[i] * z[i]);
        av[i] *= s * (1.0 - s);
      }
      Vector y = matvec_t(A_, av);
      double inv_n = 1.0 / static_cast<double>(A_.rows);
      for (int i = 0; i < dim_; ++i) y[i] = y[i] * inv_n + 2.0 * reg_ * v[i];
      return y;
    }
  }
  return {};
}

Matrix ObjectiveInstance::hessian(const Vector& x) const {
  Matrix H(dim_, dim_);
  switch (kind_) {
    case Kind::DiagQuadratic:
      for (int i = 0; i < dim_; ++i) H(i, i) = eigs_[i];
      return H;
    case Kind::DenseQuadratic:
      return H_;
    case Kind::Logistic: {
      Vector z = matvec(A_, x);
      double inv_n = 1.0 / static_cast<double>(A_.rows);
      for (int r = 0; r < A_.rows; ++r) {
        double s = sigmoid(labels_[r] * z[r]);
        double w = s * (1.0 - s) * inv_n;
        const double* row = &A_.a[static_cast<size_t>(r) * A_.cols];
        for (int i = 0; i < dim_; ++i) {
          double wi = w * row[i];
          for (int j = i; j < dim_; ++j) H(i, j) += wi * row[j];
        }
      }
      for (int i = 0; i < dim_; ++i) {
        H(i, i) += 2.0 * reg_;
        for (int j = i + 1; j < dim_; ++j) H(j, i) = H(i, j);
      }
      return H;
    }
  }
  return H;
}

ObjectiveInstance make_diag_quadratic(const std::vector<double>& eigs,
                                      uint64_t seed) {
  for (double e : eigs) {
    if (!(e > 0.0)) throw DegenerateInput("diag quadratic: eigenvalues must be > 0");
  }
  if (eigs.empty()) throw DegenerateInput("diag quadratic: empty spectrum");
  ObjectiveInstance obj;
  obj.kind_ = ObjectiveInstance::Kind::DiagQuadratic;
  obj.dim_ = static_cast<int>(eigs.size());
  obj.eigs_ = eigs;
  Rng rng(seed);
  Vector xs(obj.dim_);
  for (double& v : xs) v = rng.normal();
  obj.x_star_ = std::move(xs);
  return obj;
}

Matrix make_spiked_covariance(int n, int m_rows, int spikes, double factor,
                              uint64_t seed) {
  if (n <= 0 || m_rows <= 0) throw DegenerateInput("spiked: empty shape");
  if (spikes < 0 || spikes > n) {
    throw DegenerateInput("spiked: spike count out of range");
  }
  Rng rng(seed);
  Matrix A(m_rows, n);
  for (int i = 0; i < m_rows; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
  }
  for (int j = 0; j < spikes; ++j) {
    for (int i = 0; i < m_rows; ++i) A(i, j) *= factor;
  }
  return A;
}

ObjectiveInstance make_least_squares(const Matrix& A, const Vector& b,
                                     double reg_scale) {
  if (A.rows == 0 || A.cols == 0) throw DegenerateInput("least squares: empty data");
  if (static_cast<size_t>(A.rows) != b.size()) {
    throw DegenerateInput("least squares: label count mismatch");
  }
  if (!(reg_scale > 0.0)) throw DegenerateInput("least squares: reg_scale must be > 0");

  ObjectiveInstance obj;
  obj.kind_ = ObjectiveInstance::Kind::DenseQuadratic;
  obj.dim_ = A.cols;
  obj.A_ = A;
  obj.labels_ = b;
  double nrm = spectral_norm(A);
  obj.reg_ = reg_scale * nrm * nrm;

  // H = A'A/n + 2 lambda I, x* solves H x = A'b/n.
  double inv_n = 1.0 / static_cast<double>(A.rows);
  Matrix H(A.cols, A.cols);
  for (int r = 0; r < A.rows; ++r) {
    const double* row = &A.a[static_cast<size_t>(r) * A.cols];
    for (int i = 0; i < A.cols; ++i) {
      double w = row[i] * inv_n;
      for (int j = i; j < A.cols; ++j) H(i, j) += w * row[j];
    }
  }
  for (int i = 0; i < A.cols; ++i) {
    H(i, i) += 2.0 * obj.reg_;
    for (int j = i + 1; j < A.cols; ++j) H(j, i) = H(i, j);
  }
  Vector rhs = matvec_t(A, b);
  for (double& v : rhs) v *= inv_n;
  Vector xs = solve_spd(H, rhs);

  obj.H_ = std::move(H);
  obj.x_star_ = xs;
  // Residual value at the minimizer; value() measures from x*.
  double fs = 0.0;
  Vector ax = matvec(A, xs);
  for (size_t i = 0; i < b.size(); ++i) {
    double d = ax[i] - b[i];
    fs += d * d;
  }
  obj.f_star_ = 0.5 * fs * inv_n + obj.reg_ * dot(xs, xs);
  return obj;
}

ObjectiveInstance make_logistic(const Matrix& A, const std::vector<int>& labels,
                                double reg_scale) {
  if (A.rows == 0 || A.cols == 0) throw DegenerateInput("logistic: empty data");
  if (static_cast<size_t>(A.rows) != labels.size()) {
    throw BadLabels("logistic: label count mismatch");
  }
  for (int l : labels) {
    if (l != -1 && l != 1) throw BadLabels("logistic: labels must be -1 or +1");
  }
  if (!(reg_scale > 0.0)) throw DegenerateInput("logistic: reg_scale must be > 0");

  ObjectiveInstance obj;
  obj.kind_ = ObjectiveInstance::Kind::Logistic;
  obj.dim_ = A.cols;
  obj.A_ = A;
  obj.labels_.assign(labels.begin(), labels.end());
  double nrm = spectral_norm(A);
  obj.reg_ = reg_scale * nrm * nrm;
  return obj;
}

std::vector<int> make_sign_labels(const Matrix& A, uint64_t seed) {
  Rng rng(seed);
  Vector xt(A.cols);
  for (double& v : xt) v = rng.normal();
  Vector z = matvec(A, xt);
  std::vector<int> labels(z.size());
  for (size_t i = 0; i < z.size(); ++i) labels[i] = (z[i] >= 0.0) ? 1 : -1;
  return labels;
}

std::vector<double> sym_eigvals(const Matrix& M) {
  const int n = M.rows;
  if (n != M.cols) throw NotSymmetric("sym_eigvals: matrix not square");
  if (n > 2000) throw DegenerateInput("sym_eigvals: dimension above 2000");
  double scale = 0.0;
  for (double v : M.a) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(M(i, j) - M(j, i)) > 1e-10 * (1.0 + scale)) {
        throw NotSymmetric("sym_eigvals: matrix not symmetric");
      }
    }
  }

  Matrix A = M;
  double frob = 0.0;
  for (double v : A.a) frob += v * v;
  frob = std::sqrt(frob);
  const double target = 1e-12 * frob;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) s += 2.0 * A(i, j) * A(i, j);
    }
    return std::sqrt(s);
  };

  // Cyclic sweeps; each rotation zeroes one off-diagonal pair exactly.
  for (int sweep = 0; sweep < 64 && off_norm() > target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = A(p, q);
        if (apq == 0.0) continue;
        double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = A(i, i);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

Vector find_optimum(const ObjectiveInstance& obj, double tol, long max_iters) {
  if (obj.is_quadratic()) return *obj.x_star();

  Vector x(obj.dim(), 0.0);
  double L_est = 0.0;
  for (long it = 0; it < max_iters; ++it) {
    if (it % 100 == 0) {
      auto hv = [&](const Vector& v) { return obj.hessian_vec(x, v); };
      L_est = power_iteration_sym(hv, obj.dim(), 100);
      if (!(L_est > 0.0)) throw NumericalError("find_optimum: flat curvature");
    }
    Vector g = obj.gradient(x);
    if (norm2(g) <= tol) return x;
    axpy(-1.0 / L_est, g, x);
  }
  throw Timeout("find_optimum: gradient descent did not reach tolerance");
}

}  // namespace cyclic
