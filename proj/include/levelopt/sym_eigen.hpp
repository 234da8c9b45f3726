// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include "levelopt/vec.hpp"

namespace levelopt::eig {

/// Dense symmetric matrix, full row-major storage with symmetry enforced at
/// construction.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t m) : m_(m), data_(m * m, 0.0) {}

  /// Validates symmetry: entries with |a_ij - a_ji| > 1e-12 * max|a| are
  /// rejected. The stored matrix is the symmetrized input.
  static SymMatrix from_dense(std::size_t m, const Vec& rowmajor);

  std::size_t dim() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * m_ + j];
  }
  /// Writes both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * m_ + j] = v;
    data_[j * m_ + i] = v;
  }

  const Vec& data() const { return data_; }
  Vec& mutable_data() { return data_; }

  double trace() const;
  double fro_norm() const { return std::sqrt(kern::nrm2sq(data_.data(), data_.size())); }
  double max_abs() const;

  /// y = A x
  void multiply(const Vec& x, Vec& y) const;

  /// <A, B>_F
  double fro_dot(const SymMatrix& other) const;

 private:
  std::size_t m_ = 0;
  Vec data_;
};

/// Eigenvalues sorted descending; eigenvectors stored as rows of `vectors`
/// (row i pairs with eigenvalues[i]). Each vector's first nonzero component
/// is positive.
struct EigDecomp {
  Vec eigenvalues;
  Vec vectors;  // row-major, m x m
  std::size_t dim = 0;

  const double* vector(std::size_t i) const { return vectors.data() + i * dim; }
};

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm falls below
/// 1e-12 * ||A||_F, at most 100 sweeps. Throws on non-convergence.
EigDecomp jacobi_eig(const SymMatrix& a);

/// mats[0] + sum_i x[i] * mats[i+1]
SymMatrix apply_A(const std::vector<SymMatrix>& mats, const Vec& x);

/// (<mats[1], Y>_F, ..., <mats[n], Y>_F); the adjoint of the linear part.
Vec adjoint_A(const std::vector<SymMatrix>& mats, const SymMatrix& y);

/// exp((lambda_i - max)/eta) weights normalized to sum 1.
Vec softmax_weights(const Vec& eigenvalues, double eta);

/// Q diag(softmax_weights(lambda, eta)) Q^T; a point of the spectahedron.
SymMatrix softmax_psd(const EigDecomp& d, double eta);

/// eta * log sum exp(v_i / eta), computed with max-subtraction.
double log_sum_exp(const Vec& vals, double eta);

/// Largest absolute eigenvalue (the spectral norm) by power iteration on a
/// symmetric matrix, run until the residual ||A v - theta v|| falls below
/// tol * ||A||_F. For a symmetric matrix the residual bounds the eigenvalue
/// error directly.
double spectral_norm(const SymMatrix& a, double tol = 1e-8,
                     std::size_t max_iters = 100000);

}  // namespace levelopt::eig
