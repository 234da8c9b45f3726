// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/abl.hpp"

#include <stdexcept>

namespace levelopt {

namespace {

void check_config(const AblConfig& cfg) {
  if (!(cfg.lambda > 0.0 && cfg.lambda < 1.0))
    throw std::invalid_argument("abl: lambda in (0,1) required");
  if (cfg.policy == StepKind::polynomial && cfg.lambda <= 2.0 / 3.0)
    throw std::invalid_argument("abl: polynomial policy needs lambda > 2/3");
}

}  // namespace

AblGapResult abl_gap(const Vec& p, double lb, const AblConfig& cfg,
                     const FeasibleSet& domain, const Oracle& oracle,
                     TraceSink& sink) {
  check_config(cfg);
  const OracleEval e0 = oracle(p);
  ++sink.oracle_calls;
  const double fbar0 = e0.value;
  const double flow0 = lb;

  Vec xu = p;
  double fbar = fbar0;
  double flow = flow0;
  Vec xprev = cfg.x0 ? *cfg.x0 : p;

  std::vector<Cut> bundle;
  bundle.reserve(cfg.max_iters_per_call + 1);
  if (cfg.x0 && *cfg.x0 != p) {
    const OracleEval ex = oracle(xprev);
    ++sink.oracle_calls;
    bundle.push_back(cut_from(xprev, ex));
  } else {
    bundle.push_back(cut_from(p, e0));
  }

  StepPolicy policy = cfg.policy == StepKind::polynomial
                          ? StepPolicy::polynomial(cfg.lambda)
                          : StepPolicy::recursive(cfg.lambda);

  AblGapResult res;
  for (std::size_t k = 1; k <= cfg.max_iters_per_call; ++k) {
    const double a = policy.alpha(k);
    IterRecord::Diag diag;
    diag.alpha = a;

    const Vec xl = lin_comb(1.0 - a, xu, a, xprev);
    const OracleEval el = oracle(xl);
    ++sink.oracle_calls;
    bundle.push_back(cut_from(xl, el));

    const SubproblemReport low = solve_bundle_min(domain, bundle);
    sink.subproblem_iters += low.dual_iterations;
    flow = std::max(flow, low.optimal_value);

    const double level = cfg.lambda * flow + (1.0 - cfg.lambda) * fbar;
    diag.level = level;
    const SubproblemReport prox_rep =
        solve_prox_step_bundle(domain, xprev, bundle, level);
    sink.subproblem_iters += prox_rep.dual_iterations;
    if (prox_rep.status == SubproblemReport::Status::infeasible)
      throw std::runtime_error("abl: prox step infeasible (level inconsistency)");
    const Vec& xk = prox_rep.minimizer;
    diag.prox_move_sq = dist2sq(xk, xprev);
    diag.d_omega = prox_rep.optimal_value;

    const Vec xtilde = lin_comb(a, xk, 1.0 - a, xu);
    const OracleEval eu = oracle(xtilde);
    ++sink.oracle_calls;
    diag.upper_candidate = eu.value;
    if (eu.value < fbar) {
      fbar = eu.value;
      xu = xtilde;
    }
    sink.row(fbar, flow, diag);

    if (fbar - flow <= cfg.lambda * (fbar0 - flow0)) {
      res.p_plus = xu;
      res.lb_plus = flow;
      res.ub_plus = fbar;
      res.contracted = true;
      res.iterations = k;
      return res;
    }
    xprev = xk;
  }
  res.p_plus = xu;
  res.lb_plus = flow;
  res.ub_plus = fbar;
  res.contracted = false;
  res.iterations = cfg.max_iters_per_call;
  return res;
}

SolveResult abl_solve(const Vec& p0, const AblConfig& cfg,
                      const FeasibleSet& domain, const Oracle& oracle) {
  check_config(cfg);
  if (!domain.contains(p0, 1e-9))
    throw std::invalid_argument("abl_solve: infeasible start");
  SolveResult out;
  TraceSink sink;
  sink.trace = &out.trace;

  // Initial bounds: minimize the cut at p0 over the domain.
  const OracleEval e0 = oracle(p0);
  ++sink.oracle_calls;
  Vec p;
  const Cut c0 = cut_from(p0, e0);
  double lb = domain.min_linear(c0.slope, &p);
  lb += c0.value - dot(c0.slope, c0.anchor);
  const OracleEval e1 = oracle(p);
  ++sink.oracle_calls;
  double ub = e1.value;

  for (std::size_t s = 1; s <= cfg.max_phases; ++s) {
    if (ub - lb <= cfg.epsilon) break;
    sink.phase = s;
    PhaseRecord ph;
    ph.phase_index = s;
    ph.delta0 = ub - lb;
    const AblGapResult r = abl_gap(p, lb, cfg, domain, oracle, sink);
    ph.iterations = r.iterations;
    ph.significant = true;
    ph.exit = r.contracted ? GapExit::upper_bound : GapExit::cap;
    out.trace.phases.push_back(ph);
    p = r.p_plus;
    lb = r.lb_plus;
    ub = r.ub_plus;
    if (!r.contracted) {
      out.trace.status = RunStatus::cap_exceeded;
      break;
    }
  }
  if (out.trace.status == RunStatus::converged && ub - lb > cfg.epsilon)
    out.trace.status = RunStatus::cap_exceeded;  // phase cap
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

}  // namespace levelopt
