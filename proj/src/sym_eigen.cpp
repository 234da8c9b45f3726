// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace levelopt::eig {

SymMatrix SymMatrix::from_dense(std::size_t m, const Vec& rowmajor) {
  if (rowmajor.size() != m * m)
    throw std::invalid_argument("SymMatrix: bad data size");
  double scale = 0.0;
  for (double v : rowmajor) scale = std::max(scale, std::fabs(v));
  SymMatrix a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const double ij = rowmajor[i * m + j];
      const double ji = rowmajor[j * m + i];
      if (std::fabs(ij - ji) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("SymMatrix: asymmetry beyond tolerance");
      a.set(i, j, 0.5 * (ij + ji));
    }
  return a;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < m_; ++i) t += data_[i * m_ + i];
  return t;
}

double SymMatrix::max_abs() const {
  double s = 0.0;
  for (double v : data_) s = std::max(s, std::fabs(v));
  return s;
}

void SymMatrix::multiply(const Vec& x, Vec& y) const {
  y.resize(m_);
  for (std::size_t i = 0; i < m_; ++i)
    y[i] = kern::dot(data_.data() + i * m_, x.data(), m_);
}

double SymMatrix::fro_dot(const SymMatrix& other) const {
  if (other.dim() != m_) throw std::invalid_argument("fro_dot: dim mismatch");
  return kern::dot(data_.data(), other.data_.data(), data_.size());
}

namespace {

double offdiag_sq(const Vec& a, std::size_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = a[i * m + j];
      s += 2.0 * v * v;
    }
  return s;
}

void fix_signs(EigDecomp& d) {
  for (std::size_t i = 0; i < d.dim; ++i) {
    double* v = d.vectors.data() + i * d.dim;
    for (std::size_t j = 0; j < d.dim; ++j) {
      if (v[j] != 0.0) {
        if (v[j] < 0.0) kern::scal(-1.0, v, d.dim);
        break;
      }
    }
  }
}

}  // namespace

EigDecomp jacobi_eig(const SymMatrix& input) {
  const std::size_t m = input.dim();
  Vec a = input.data();
  // Accumulate Q^T as rows so rotations touch contiguous memory.
  Vec qt(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) qt[i * m + i] = 1.0;

  const double fro = std::sqrt(kern::nrm2sq(a.data(), a.size()));
  const double stop = 1e-12 * (fro > 0.0 ? fro : 1.0);

  std::size_t sweep = 0;
  for (; sweep < 100; ++sweep) {
    if (std::sqrt(offdiag_sq(a, m)) <= stop) break;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a[p * m + q];
        if (std::fabs(apq) <= 1e-300) continue;
        const double app = a[p * m + p];
        const double aqq = a[q * m + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Rows p and q of A (contiguous), then mirror into the columns.
        // rot(x, y, ...) maps (x, y) to (c x + s y, c y - s x); passing
        // (row_q, row_p) yields the similarity-transform row update.
        kern::rot(a.data() + q * m, a.data() + p * m, c, s, m);
        for (std::size_t i = 0; i < m; ++i) {
          a[i * m + p] = a[p * m + i];
          a[i * m + q] = a[q * m + i];
        }
        // The 2x2 diagonal block, written explicitly for symmetry.
        const double app2 = app - t * apq;
        const double aqq2 = aqq + t * apq;
        a[p * m + p] = app2;
        a[q * m + q] = aqq2;
        a[p * m + q] = 0.0;
        a[q * m + p] = 0.0;
        kern::rot(qt.data() + q * m, qt.data() + p * m, c, s, m);
      }
    }
  }
  if (sweep == 100 && std::sqrt(offdiag_sq(a, m)) > stop)
    throw std::runtime_error("jacobi_eig: no convergence in 100 sweeps");

  EigDecomp d;
  d.dim = m;
  d.eigenvalues.resize(m);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  Vec diag(m);
  for (std::size_t i = 0; i < m; ++i) diag[i] = a[i * m + i];
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });
  d.vectors.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    d.eigenvalues[i] = diag[order[i]];
    std::copy(qt.begin() + order[i] * m, qt.begin() + (order[i] + 1) * m,
              d.vectors.begin() + i * m);
  }
  fix_signs(d);
  return d;
}

SymMatrix apply_A(const std::vector<SymMatrix>& mats, const Vec& x) {
  if (mats.empty()) throw std::invalid_argument("apply_A: no matrices");
  if (x.size() + 1 != mats.size())
    throw std::invalid_argument("apply_A: dimension mismatch");
  SymMatrix out = mats[0];
  Vec& d = out.mutable_data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mats[i + 1].dim() != out.dim())
      throw std::invalid_argument("apply_A: matrix size mismatch");
    if (x[i] != 0.0)
      kern::axpy(x[i], mats[i + 1].data().data(), d.data(), d.size());
  }
  return out;
}

Vec adjoint_A(const std::vector<SymMatrix>& mats, const SymMatrix& y) {
  if (mats.empty()) throw std::invalid_argument("adjoint_A: no matrices");
  Vec out(mats.size() - 1);
  for (std::size_t i = 1; i < mats.size(); ++i) {
    if (mats[i].dim() != y.dim())
      throw std::invalid_argument("adjoint_A: dimension mismatch");
    out[i - 1] = mats[i].fro_dot(y);
  }
  return out;
}

Vec softmax_weights(const Vec& eigenvalues, double eta) {
  if (eta <= 0.0) throw std::invalid_argument("softmax_weights: eta > 0 required");
  const double mx = kern::max_val(eigenvalues.data(), eigenvalues.size());
  Vec w(eigenvalues.size());
  double z = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp((eigenvalues[i] - mx) / eta);
    z += w[i];
  }
  kern::scal(1.0 / z, w.data(), w.size());
  return w;
}

SymMatrix softmax_psd(const EigDecomp& d, double eta) {
  const Vec w = softmax_weights(d.eigenvalues, eta);
  const std::size_t m = d.dim;
  SymMatrix y(m);
  Vec& out = y.mutable_data();
  for (std::size_t k = 0; k < m; ++k) {
    const double* v = d.vector(k);
    if (w[k] == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i)
      kern::axpy(w[k] * v[i], v, out.data() + i * m, m);
  }
  return y;
}

double log_sum_exp(const Vec& vals, double eta) {
  if (eta <= 0.0) throw std::invalid_argument("log_sum_exp: eta > 0 required");
  const double mx = kern::max_val(vals.data(), vals.size());
  double z = 0.0;
  for (double v : vals) z += std::exp((v - mx) / eta);
  return mx + eta * std::log(z);
}

double spectral_norm(const SymMatrix& a, double tol, std::size_t max_iters) {
  const std::size_t m = a.dim();
  if (m == 0) return 0.0;
  const double fro = a.fro_norm();
  if (fro == 0.0) return 0.0;
  // Power iteration on A^2 avoids sign flipping for negative extremes.
  Vec v(m);
  for (std::size_t i = 0; i < m; ++i)
    v[i] = 1.0 + 0.001 * static_cast<double>(i % 7);
  kern::scal(1.0 / std::sqrt(kern::nrm2sq(v.data(), m)), v.data(), m);
  Vec av(m), aav(m);
  double theta = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    a.multiply(v, av);
    a.multiply(av, aav);
    theta = kern::dot(v.data(), aav.data(), m);  // Rayleigh quotient of A^2
    double resid = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = aav[i] - theta * v[i];
      resid += r * r;
    }
    if (std::sqrt(resid) <= tol * fro * fro) break;
    const double nrm = std::sqrt(kern::nrm2sq(aav.data(), m));
    if (nrm == 0.0) return 0.0;
    kern::scal(1.0 / nrm, aav.data(), m);
    v.swap(aav);
  }
  return std::sqrt(std::max(theta, 0.0));
}

}  // namespace levelopt::eig
