// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace levelopt {

namespace {
constexpr double kLogFloor = 1e-16;
}

ProxSetup ProxSetup::euclidean() { return ProxSetup(Kind::euclidean); }
ProxSetup ProxSetup::entropy() { return ProxSetup(Kind::entropy); }

double ProxSetup::omega(const Vec& x) const {
  if (kind_ == Kind::euclidean) return 0.5 * norm2sq(x);
  double s = 0.0;
  for (double v : x) {
    const double c = v < kLogFloor ? kLogFloor : v;
    s += v * std::log(c);
  }
  return s;
}

Vec ProxSetup::omega_grad(const Vec& x) const {
  if (kind_ == Kind::euclidean) return x;
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = x[i] < kLogFloor ? kLogFloor : x[i];
    g[i] = 1.0 + std::log(c);
  }
  return g;
}

double ProxSetup::bregman(const Vec& x, const Vec& anchor) const {
  if (kind_ == Kind::euclidean) return 0.5 * dist2sq(x, anchor);
  // KL divergence with the same clamping as omega_grad.
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i] < kLogFloor ? kLogFloor : x[i];
    const double ai = anchor[i] < kLogFloor ? kLogFloor : anchor[i];
    s += x[i] * (std::log(xi) - std::log(ai)) - (x[i] - anchor[i]);
  }
  return s < 0.0 ? 0.0 : s;
}

Vec ProxSetup::bregman_grad(const Vec& x, const Vec& anchor) const {
  Vec g = omega_grad(x);
  const Vec ga = omega_grad(anchor);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= ga[i];
  return g;
}

ProxSize prox_size_omega(const ProxSetup& prox, const FeasibleSet& set) {
  double d_sq = 0.0;
  if (prox.kind() == ProxSetup::Kind::euclidean) {
    // Bregman distance of ||.||^2/2 is ||x - z||^2/2; maximize over the set.
    if (set.is_box()) {
      double s = 0.0;
      for (std::size_t i = 0; i < set.dim(); ++i) {
        const double w = set.upper()[i] - set.lower()[i];
        s += w * w;
      }
      d_sq = 0.5 * s;
    } else {
      d_sq = set.dim() > 1 ? 1.0 : 0.0;  // simplex diameter^2 = 2
    }
  } else {
    if (!set.is_simplex())
      throw std::invalid_argument("prox_size_omega: entropy prox needs a simplex");
    // Anchored at the omega-minimizer (uniform point); the worst case over x
    // is a vertex, with value ln m. The unrestricted two-point supremum is
    // unbounded for the entropy.
    d_sq = set.dim() > 1 ? std::log(static_cast<double>(set.dim())) : 0.0;
  }
  return ProxSize{d_sq, 2.0 * d_sq / prox.sigma()};
}

}  // namespace levelopt
