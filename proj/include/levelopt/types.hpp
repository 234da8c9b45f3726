// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "levelopt/vec.hpp"

namespace levelopt {

/// One first-order oracle answer: f(x) and a subgradient f'(x).
struct OracleEval {
  double value = 0.0;
  Vec subgrad;
};

/// Black-box first-order oracle. Implementations must be safe for concurrent
/// read-only evaluation and return exactly one subgradient per query.
using Oracle = std::function<OracleEval(const Vec&)>;

/// Smoothness metadata (rho, M): f(y) - f(x) - <f'(x), y-x> is bounded by
/// M/(1+rho) * ||y-x||^(1+rho). Consumed only by the harness-side complexity
/// checks; the solvers never read it.
struct SmoothnessClass {
  double rho = 0.0;
  double M = 1.0;
};

/// Affine under-estimator anchored at z: h(x) = value + <slope, x - z>.
struct Cut {
  Vec anchor;
  double value = 0.0;
  Vec slope;

  double eval(const Vec& x) const {
    double acc = value;
    for (std::size_t i = 0; i < slope.size(); ++i)
      acc += slope[i] * (x[i] - anchor[i]);
    return acc;
  }
};

inline Cut cut_from(const Vec& x, const OracleEval& e) {
  return Cut{x, e.value, e.subgrad};
}

/// m(x) = max over cuts. Requires at least one cut and equal dimensions.
double eval_bundle(const std::vector<Cut>& cuts, const Vec& x);

/// Mutable per-procedure state shared by the gap-reduction loops.
struct GapState {
  double ub = 0.0;      // best objective value found
  double lb = 0.0;      // certified lower bound
  double level = 0.0;   // current level
  Vec prox_center;      // x_k
  Vec ub_point;         // point achieving ub
  std::size_t iter = 0;
};

}  // namespace levelopt
