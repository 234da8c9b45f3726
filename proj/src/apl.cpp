// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/apl.hpp"

#include <stdexcept>

namespace levelopt {

namespace detail {

LevelGapParams params_of(const AplConfig& cfg) {
  LevelGapParams p;
  p.beta = cfg.beta;
  p.theta = cfg.theta;
  p.policy = cfg.policy;
  p.bundle_limit = cfg.bundle_limit;
  p.max_iters = cfg.max_iters_per_call;
  p.smoothing_exit = false;
  p.x0 = cfg.x0;
  return p;
}

SolveResult level_solve(LevelOracle& oracle, const Vec& p0,
                        const AplConfig& cfg, const ProxSetup& prox,
                        const FeasibleSet& domain) {
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0 && cfg.theta > 0.0 && cfg.theta < 1.0))
    throw std::invalid_argument("level_solve: beta, theta in (0,1) required");
  if (!domain.contains(p0, 1e-9))
    throw std::invalid_argument("level_solve: infeasible start");

  SolveResult out;
  TraceSink sink;
  sink.trace = &out.trace;

  // Initial bounds: minimize the cut at p0 over the domain.
  const GenCut c0 = oracle.cut_at(p0);
  ++sink.oracle_calls;
  const LocalizerSet plain(domain, cfg.bundle_limit);
  const SubproblemReport rep0 = solve_lower_bound(plain, c0);
  sink.subproblem_iters += rep0.dual_iterations;
  if (rep0.status != SubproblemReport::Status::optimal)
    throw std::runtime_error("level_solve: initial bound subproblem failed");
  Vec p = rep0.minimizer;
  double lb = rep0.optimal_value;
  UpperEval at_p = oracle.upper_at(p);
  ++sink.oracle_calls;
  double ub = at_p.f;

  const LevelGapParams params = params_of(cfg);
  for (std::size_t s = 1; s <= cfg.max_phases; ++s) {
    if (ub - lb <= cfg.epsilon) break;
    sink.phase = s;
    PhaseRecord ph;
    ph.phase_index = s;
    ph.delta0 = ub - lb;
    const LevelGapResult r =
        level_gap(oracle, domain, prox, p, at_p, lb, params, sink);
    ph.iterations = r.iterations;
    ph.significant = r.exit != GapExit::smoothing;
    ph.exit = r.exit;
    out.trace.phases.push_back(ph);
    p = r.p_plus;
    lb = r.lb_plus;
    ub = r.ub_plus;
    at_p = UpperEval{ub, ub};
    if (r.exit == GapExit::cap) {
      out.trace.status = RunStatus::cap_exceeded;
      break;
    }
  }
  if (out.trace.status == RunStatus::converged && ub - lb > cfg.epsilon)
    out.trace.status = RunStatus::cap_exceeded;
  out.solution = p;
  out.ub = ub;
  out.lb = lb;
  out.trace.final_ub = ub;
  out.trace.final_lb = lb;
  out.trace.oracle_calls = sink.oracle_calls;
  out.trace.subproblem_iters = sink.subproblem_iters;
  out.trace.wall_ms = sink.elapsed_ms();
  return out;
}

}  // namespace detail

LevelGapResult apl_gap(const Vec& p, double lb, const AplConfig& cfg,
                       const ProxSetup& prox, const FeasibleSet& domain,
                       const Oracle& oracle, TraceSink& sink) {
  detail::ScalarLevelOracle adapter(oracle);
  const UpperEval at_p = adapter.upper_at(p);
  ++sink.oracle_calls;
  return level_gap(adapter, domain, prox, p, at_p, lb, detail::params_of(cfg),
                   sink);
}

SolveResult apl_solve(const Vec& p0, const AplConfig& cfg,
                      const ProxSetup& prox, const FeasibleSet& domain,
                      const Oracle& oracle) {
  detail::ScalarLevelOracle adapter(oracle);
  return detail::level_solve(adapter, p0, cfg, prox, domain);
}

}  // namespace levelopt
