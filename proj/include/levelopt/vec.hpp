// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "levelopt/kernels.hpp"

namespace levelopt {

using Vec = std::vector<double>;

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

inline void require_finite(const Vec& v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty vector");
  if (!all_finite(v))
    throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

inline double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  return kern::dot(a.data(), b.data(), a.size());
}

inline double norm2sq(const Vec& a) { return kern::nrm2sq(a.data(), a.size()); }
inline double norm2(const Vec& a) { return std::sqrt(norm2sq(a)); }

inline double norm1(const Vec& a) {
  double s = 0.0;
  for (double x : a) s += std::fabs(x);
  return s;
}

inline double dist2sq(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

/// y += alpha * x
inline void add_scaled(Vec& y, double alpha, const Vec& x) {
  kern::axpy(alpha, x.data(), y.data(), y.size());
}

/// a*x + b*y
inline Vec lin_comb(double a, const Vec& x, double b, const Vec& y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace levelopt
