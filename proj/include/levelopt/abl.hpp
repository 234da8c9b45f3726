// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include "levelopt/level_gap.hpp"
#include "levelopt/types.hpp"

namespace levelopt {

/// Full-memory accelerated bundle method configuration. The bundle grows by
/// one cut per iteration without pruning; max_iters caps each gap-reduction
/// call (and hence the bundle size) and exceeding it is a hard diagnostic
/// failure, not a silent degradation.
struct AblConfig {
  double lambda = 0.75;  // gap contraction target, in (0,1)
  StepKind policy = StepKind::polynomial;
  double epsilon = 1e-6;
  std::size_t max_iters_per_call = 5000;
  std::size_t max_phases = 200;
  std::optional<Vec> x0;  // initial prox center per call; defaults to p
};

struct AblGapResult {
  Vec p_plus;
  double lb_plus = 0.0;
  double ub_plus = 0.0;  // f(p_plus)
  bool contracted = false;  // false when the iteration cap fired
  std::size_t iterations = 0;
};

/// One gap-reduction call: from (p, lb) produce (p+, lb+) with
/// f(p+) - lb+ <= lambda [f(p) - lb]. Euclidean prox term, moving level,
/// full-memory cutting-plane model.
AblGapResult abl_gap(const Vec& p, double lb, const AblConfig& cfg,
                     const FeasibleSet& domain, const Oracle& oracle,
                     TraceSink& sink);

/// Outer loop: initial bound pair from the cut at p0, then gap-reduction
/// calls until ub - lb <= epsilon.
SolveResult abl_solve(const Vec& p0, const AblConfig& cfg,
                      const FeasibleSet& domain, const Oracle& oracle);

}  // namespace levelopt
