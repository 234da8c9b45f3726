// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include "levelopt/step_policy.hpp"

namespace levelopt::bounds {

// Worst-case per-call iteration caps and phase counts, evaluated from
// smoothness metadata (M, rho), set sizes and the certified operator norm.
// Diagnostics only: the solvers never read any of these.

/// Damping-sum constants of the full-memory step policies.
double abl_c1(StepKind kind, double lambda);
double abl_c2(StepKind kind, double lambda, double rho);
double abl_alpha1(StepKind kind, double lambda);

/// Constant of the lambda = 1 policies used by the fixed-level methods.
double apl_c(StepKind kind, double rho);

/// Iteration cap for one full-memory gap-reduction call starting from gap
/// delta0, on a set of Euclidean diameter DX.
double k_abl(double delta0, double lambda, StepKind kind, double M, double rho,
             double DX);

/// Iteration cap for one fixed-level call; omega_cap = 2 D^2 / sigma.
double k_apl(double delta0, double beta, double theta, StepKind kind, double M,
             double rho, double omega_cap);

/// Iteration cap for one smoothing call with size estimate d_tilde;
/// d2_omega is the squared prox-size of the domain.
double k_usl(double delta0, double d_tilde, double beta, double theta,
             StepKind kind, double opnorm, double d2_omega, double sigma_omega,
             double sigma_v);

/// Phase cap of the full-memory outer loop at tolerance eps.
double abl_phases(double eps, double lambda, double M, double rho, double DX);

/// Scale of the initial gap for the saddle objective:
/// opnorm * sqrt(d2x * d2y / (sx * sv)).
double initial_saddle_gap(double opnorm, double d2x, double d2y, double sx,
                          double sv);

}  // namespace levelopt::bounds
