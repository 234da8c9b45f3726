// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include "levelopt/apl.hpp"

namespace levelopt {

/// Known outer function for composite objectives f(x) = Psi(phi(x)). The
/// inner components phi_i stay black boxes; Psi's structure shapes the cuts.
/// All shipped templates are monotone in their nonlinear components and have
/// outer Lipschitz constant 1.
struct PsiTemplate {
  enum class Kind { identity, max_of_m, sum_of_two, linear_plus_l1 };

  Kind kind = Kind::identity;
  std::size_t m = 1;        // number of inner components the oracle returns
  double l1_weight = 0.0;   // linear_plus_l1 only

  static PsiTemplate identity() { return {Kind::identity, 1, 0.0}; }
  static PsiTemplate max_of(std::size_t m) { return {Kind::max_of_m, m, 0.0}; }
  static PsiTemplate sum_of_two() { return {Kind::sum_of_two, 2, 0.0}; }
  static PsiTemplate linear_plus_l1(double weight) {
    return {Kind::linear_plus_l1, 1, weight};
  }

  /// Psi applied to inner values (the l1 template also reads x).
  double value(const Vec& phi, const Vec& x) const;
};

/// One inner-oracle answer: phi(z) and the component subgradients.
struct InnerEval {
  Vec values;
  std::vector<Vec> slopes;
};

using InnerOracle = std::function<InnerEval(const Vec&)>;

/// Support cut of f = Psi(phi(.)) anchored at z: the outer function applied
/// to the componentwise linearizations. For max templates the result is a
/// max of affine pieces entering the localizer as simultaneous halfspaces
/// (one bundle slot); the l1 template keeps its regularizer unlinearized.
GenCut support_cut(const Vec& z, const InnerEval& at_z, const PsiTemplate& psi);

/// The fixed-level method with support cuts in place of plain cuts. With the
/// identity template this is exactly apl_solve, trace for trace.
SolveResult apl_composite_solve(const Vec& p0, const AplConfig& cfg,
                                const ProxSetup& prox, const FeasibleSet& domain,
                                const InnerOracle& inner, const PsiTemplate& psi);

LevelGapResult apl_composite_gap(const Vec& p, double lb, const AplConfig& cfg,
                                 const ProxSetup& prox, const FeasibleSet& domain,
                                 const InnerOracle& inner,
                                 const PsiTemplate& psi, TraceSink& sink);

}  // namespace levelopt
