// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include "levelopt/localizer.hpp"
#include "levelopt/prox.hpp"

namespace levelopt {

struct SubproblemReport {
  enum class Status { optimal, infeasible };
  Vec minimizer;
  double optimal_value = 0.0;
  Status status = Status::optimal;
  std::size_t dual_iterations = 0;
};

/// Componentwise clamp; the Euclidean projection onto a box.
Vec project_box(const Vec& x, const Vec& lower, const Vec& upper);

/// Euclidean projection onto {x >= 0, sum x = 1} by sort-and-threshold.
Vec project_simplex(const Vec& x);

/// argmin over the simplex of <g, x> + sum x_i log x_i; the softmax of -g,
/// computed with max-subtraction.
Vec entropy_prox_map(const Vec& g);

/// min of a generalized cut over the localizer. Exact LP solve; infeasible
/// status signals an empty localizer (the caller reads it as a +inf lower
/// bound).
SubproblemReport solve_lower_bound(const LocalizerSet& loc, const GenCut& cut);

/// min over the feasible set of the max of plain cuts (full-memory bundle).
SubproblemReport solve_bundle_min(const FeasibleSet& set,
                                  const std::vector<Cut>& bundle);

struct DualSolveOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  double diverge_threshold = 1e12;
  std::size_t max_iters = 50000;
};

/// Prox step: argmin d_omega(x; anchor) over the localizer intersected with
/// {level_cut(x) <= level}. Solved through the Lagrangian dual over the
/// nonnegative multiplier orthant by projected gradient ascent with Armijo
/// backtracking; the inner map is closed-form (clamp / simplex projection /
/// softmax). Returns infeasible when the dual value certifiably diverges.
SubproblemReport solve_prox_step(const LocalizerSet& loc, const ProxSetup& prox,
                                 const Vec& anchor, const GenCut& level_cut,
                                 double level,
                                 const DualSolveOptions& opts = {});

/// Same dual machinery for the full-memory variant: argmin ||x - center||^2/2
/// over the feasible set subject to every bundle cut <= level.
SubproblemReport solve_prox_step_bundle(const FeasibleSet& set,
                                        const Vec& center,
                                        const std::vector<Cut>& bundle,
                                        double level,
                                        const DualSolveOptions& opts = {});

}  // namespace levelopt
