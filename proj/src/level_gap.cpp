// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/level_gap.hpp"

#include <limits>

namespace levelopt {

LevelGapResult level_gap(LevelOracle& oracle, const FeasibleSet& domain,
                         const ProxSetup& prox, const Vec& p,
                         const UpperEval& at_p, double lb,
                         const LevelGapParams& params, TraceSink& sink) {
  const double fbar0 = at_p.f;
  const double flow0 = lb;
  const double level = params.beta * flow0 + (1.0 - params.beta) * fbar0;
  const double exit_lb = level - params.theta * (level - flow0);
  const double exit_ub = level + params.theta * (fbar0 - level);
  const double exit_sm = level + 0.5 * params.theta * (fbar0 - level);

  const Vec anchor = params.x0 ? *params.x0 : p;
  GapState st;
  st.ub = fbar0;
  st.lb = flow0;
  st.level = level;
  st.prox_center = anchor;  // x_{k-1}
  st.ub_point = p;
  double fu_eta = at_p.f_eta;
  LocalizerSet loc(domain, params.bundle_limit);
  StepPolicy policy = params.policy == StepKind::polynomial
                          ? StepPolicy::polynomial(1.0)
                          : StepPolicy::recursive(1.0);

  LevelGapResult res;
  auto finish = [&](GapExit exit) {
    res.p_plus = st.ub_point;
    res.lb_plus = st.lb;
    res.ub_plus = st.ub;
    res.exit = exit;
    res.iterations = st.iter;
    return res;
  };

  for (std::size_t k = 1; k <= params.max_iters; ++k) {
    st.iter = k;
    const double a = policy.alpha(k);
    IterRecord::Diag diag;
    diag.alpha = a;
    diag.level = level;

    // Lower-bound update.
    const Vec xl = lin_comb(1.0 - a, st.ub_point, a, st.prox_center);
    const GenCut cut = oracle.cut_at(xl);
    ++sink.oracle_calls;
    const SubproblemReport low = solve_lower_bound(loc, cut);
    sink.subproblem_iters += low.dual_iterations;
    const double hlow = low.status == SubproblemReport::Status::optimal
                            ? low.optimal_value
                            : std::numeric_limits<double>::infinity();
    st.lb = std::max(st.lb, std::min(level, hlow));
    if (st.lb >= exit_lb) {
      sink.row(st.ub, st.lb, diag);
      return finish(GapExit::lower_bound);
    }

    // Prox-center update. Infeasibility certifies that the level set is
    // empty, which step 1 would have caught with an exact lower bound; fold
    // it into the same exit.
    const SubproblemReport prox_rep =
        solve_prox_step(loc, prox, anchor, cut, level);
    sink.subproblem_iters += prox_rep.dual_iterations;
    if (prox_rep.status == SubproblemReport::Status::infeasible) {
      st.lb = std::max(st.lb, level);
      sink.row(st.ub, st.lb, diag);
      return finish(GapExit::lower_bound);
    }
    const Vec& xk = prox_rep.minimizer;
    diag.prox_move_sq = dist2sq(xk, st.prox_center);
    diag.d_omega = prox_rep.optimal_value;

    // Upper-bound update.
    const Vec xtilde = lin_comb(a, xk, 1.0 - a, st.ub_point);
    const UpperEval ue = oracle.upper_at(xtilde);
    ++sink.oracle_calls;
    diag.upper_candidate = ue.f;
    if (ue.f < st.ub - 1e-14) {
      st.ub_point = xtilde;
      st.ub = ue.f;
      fu_eta = ue.f_eta;
    }
    if (st.ub <= exit_ub) {
      sink.row(st.ub, st.lb, diag);
      return finish(GapExit::upper_bound);
    }
    if (params.smoothing_exit && fu_eta <= exit_sm) {
      sink.row(st.ub, st.lb, diag);
      return finish(GapExit::smoothing);
    }

    // Localizer update: the current prox-center halfspace plus the retained
    // most recent cuts.
    loc.set_center_halfspace(prox.bregman_grad(xk, anchor), xk);
    loc.push_block(cut, level);
    if (params.observer) {
      LevelGapObservation obs;
      obs.k = k;
      obs.localizer = &loc;
      obs.cut = &cut;
      obs.level = level;
      obs.prox_center = &xk;
      obs.eval_point = &xl;
      params.observer(obs);
    }
    st.prox_center = xk;
    sink.row(st.ub, st.lb, diag);
  }
  return finish(GapExit::cap);
}

}  // namespace levelopt
