// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <chrono>
#include <optional>

#include "levelopt/localizer.hpp"
#include "levelopt/prox.hpp"
#include "levelopt/step_policy.hpp"
#include "levelopt/subproblem.hpp"
#include "levelopt/trace.hpp"

namespace levelopt {

/// Objective values at a candidate point. f_eta is the smoothed surrogate;
/// it equals f for the non-smoothing methods.
struct UpperEval {
  double f = 0.0;
  double f_eta = 0.0;
};

/// Cut-producing first-order interface consumed by the fixed-level
/// gap-reduction engine. cut_at must return an under-estimator of f anchored
/// at the query point.
class LevelOracle {
 public:
  virtual ~LevelOracle() = default;
  virtual UpperEval upper_at(const Vec& x) = 0;
  virtual GenCut cut_at(const Vec& x) = 0;
};

/// Shared counters and clock for one solver run; rows are appended to the
/// attached trace if any.
struct TraceSink {
  RunTrace* trace = nullptr;
  std::uint64_t iter = 0;
  std::uint64_t phase = 0;
  std::uint64_t oracle_calls = 0;
  std::uint64_t subproblem_iters = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }

  void row(double ub, double lb, const IterRecord::Diag& diag) {
    if (!trace) return;
    IterRecord r;
    r.iter = ++iter;
    r.phase = phase;
    r.ub = ub;
    r.lb = lb;
    r.gap = ub - lb;
    r.oracle_calls = oracle_calls;
    r.subproblem_iters = subproblem_iters;
    r.wall_ms = elapsed_ms();
    r.diag = diag;
    trace->rows.push_back(r);
  }
};

/// Post-iteration view for instrumentation (invariant tests); the references
/// are only valid inside the callback.
struct LevelGapObservation {
  std::size_t k = 0;
  const LocalizerSet* localizer = nullptr;  // state after the update
  const GenCut* cut = nullptr;              // newest cut
  double level = 0.0;
  const Vec* prox_center = nullptr;  // x_k
  const Vec* eval_point = nullptr;   // cut anchor of this iteration
};
using LevelGapObserver = std::function<void(const LevelGapObservation&)>;

struct LevelGapParams {
  double beta = 0.5;
  double theta = 0.5;
  StepKind policy = StepKind::polynomial;  // run with lambda = 1, alpha_1 = 1
  std::size_t bundle_limit = 10;
  std::size_t max_iters = 100000;
  bool smoothing_exit = false;  // enable the f_eta termination branch
  std::optional<Vec> x0;        // phase prox anchor; defaults to p
  LevelGapObserver observer;    // instrumentation hook, may be empty
};

struct LevelGapResult {
  Vec p_plus;
  double lb_plus = 0.0;
  double ub_plus = 0.0;  // f(p_plus), known exactly by the procedure
  GapExit exit = GapExit::upper_bound;
  std::size_t iterations = 0;
};

/// One fixed-level gap-reduction call: from (p, lb) with f-values at_p,
/// produce (p+, lb+) with f(p+) - lb+ <= q [f(p) - lb],
/// q = 1 - (1-theta) min(beta, 1-beta), unless the smoothing exit fires.
LevelGapResult level_gap(LevelOracle& oracle, const FeasibleSet& domain,
                         const ProxSetup& prox, const Vec& p,
                         const UpperEval& at_p, double lb,
                         const LevelGapParams& params, TraceSink& sink);

/// Final state of an outer solve loop.
struct SolveResult {
  Vec solution;
  double ub = 0.0;
  double lb = 0.0;
  RunTrace trace;
};

}  // namespace levelopt
