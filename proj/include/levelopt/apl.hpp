// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include "levelopt/level_gap.hpp"
#include "levelopt/types.hpp"

namespace levelopt {

/// Restricted-memory prox-level configuration. The localizer keeps at most
/// bundle_limit cuts (FIFO) plus the single prox-center halfspace, so the
/// subproblem size stays constant across iterations.
struct AplConfig {
  double beta = 0.5;
  double theta = 0.5;
  StepKind policy = StepKind::polynomial;  // lambda = 1, alpha_1 = 1
  std::size_t bundle_limit = 10;
  double epsilon = 1e-6;
  std::size_t max_iters_per_call = 100000;
  std::size_t max_phases = 200;
  std::optional<Vec> x0;

  double q() const {
    return 1.0 - (1.0 - theta) * std::min(beta, 1.0 - beta);
  }
};

/// One gap-reduction call on a plain first-order oracle.
LevelGapResult apl_gap(const Vec& p, double lb, const AplConfig& cfg,
                       const ProxSetup& prox, const FeasibleSet& domain,
                       const Oracle& oracle, TraceSink& sink);

/// Outer loop: initial bounds from the cut at p0, then gap-reduction calls
/// until ub - lb <= epsilon.
SolveResult apl_solve(const Vec& p0, const AplConfig& cfg,
                      const ProxSetup& prox, const FeasibleSet& domain,
                      const Oracle& oracle);

namespace detail {

/// Adapter running a plain oracle through the level-gap engine; also the
/// reduction target for the identity-composite path.
class ScalarLevelOracle final : public LevelOracle {
 public:
  explicit ScalarLevelOracle(const Oracle& oracle) : oracle_(oracle) {}
  UpperEval upper_at(const Vec& x) override {
    const OracleEval e = oracle_(x);
    return UpperEval{e.value, e.value};
  }
  GenCut cut_at(const Vec& x) override {
    return GenCut::from(x, oracle_(x));
  }

 private:
  const Oracle& oracle_;
};

LevelGapParams params_of(const AplConfig& cfg);

/// Shared outer loop for every fixed-level method: seeds bounds from the
/// initial cut, then repeats gap-reduction calls.
SolveResult level_solve(LevelOracle& oracle, const Vec& p0,
                        const AplConfig& cfg, const ProxSetup& prox,
                        const FeasibleSet& domain);

}  // namespace detail

}  // namespace levelopt
