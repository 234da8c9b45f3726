// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/feasible_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace levelopt {

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  if (lower.empty() || lower.size() != upper.size())
    throw std::invalid_argument("box: bad dimensions");
  require_finite(lower, "box lower");
  require_finite(upper, "box upper");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i]) throw std::invalid_argument("box: lower > upper");
  FeasibleSet s;
  s.kind_ = Kind::box;
  s.dim_ = lower.size();
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

FeasibleSet FeasibleSet::simplex(std::size_t n) {
  if (n < 1) throw std::invalid_argument("simplex: n >= 1 required");
  FeasibleSet s;
  s.kind_ = Kind::simplex;
  s.dim_ = n;
  return s;
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  if (x.size() != dim_) return false;
  if (kind_ == Kind::box) {
    for (std::size_t i = 0; i < dim_; ++i)
      if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
    return true;
  }
  double s = 0.0;
  for (double v : x) {
    if (v < -tol) return false;
    s += v;
  }
  return std::fabs(s - 1.0) <= tol * static_cast<double>(dim_);
}

double FeasibleSet::euclidean_diameter() const {
  if (kind_ == Kind::box) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double w = upper_[i] - lower_[i];
      s += w * w;
    }
    return std::sqrt(s);
  }
  return dim_ > 1 ? std::sqrt(2.0) : 0.0;
}

Vec FeasibleSet::interior_point() const {
  Vec p(dim_);
  if (kind_ == Kind::box) {
    for (std::size_t i = 0; i < dim_; ++i) p[i] = 0.5 * (lower_[i] + upper_[i]);
  } else {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(dim_));
  }
  return p;
}

double FeasibleSet::min_linear(const Vec& c, Vec* argmin) const {
  if (c.size() != dim_) throw std::invalid_argument("min_linear: dimension mismatch");
  if (kind_ == Kind::box) {
    double v = 0.0;
    if (argmin) argmin->resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      const double xi = c[i] >= 0.0 ? lower_[i] : upper_[i];
      v += c[i] * xi;
      if (argmin) (*argmin)[i] = xi;
    }
    return v;
  }
  std::size_t j = 0;
  for (std::size_t i = 1; i < dim_; ++i)
    if (c[i] < c[j]) j = i;
  if (argmin) {
    argmin->assign(dim_, 0.0);
    (*argmin)[j] = 1.0;
  }
  return c[j];
}

}  // namespace levelopt
