// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <memory>

#include "levelopt/apl.hpp"
#include "levelopt/sym_eigen.hpp"

namespace levelopt {

/// Smoothed evaluation of the max-structured term:
///   F_eta(x) = max_y { <A x, y> - g(y) - eta V(y) },
/// with V the entropy (or matrix entropy) distance from the uniform center.
/// gradient covers the F part only; the affine term of the objective is
/// added by the callers.
struct SmoothedEval {
  double value = 0.0;
  Vec gradient;
  double eta = 0.0;
  Vec y_weights;  // maximizer weights (coordinates or eigenbasis)
  std::shared_ptr<const eig::SymMatrix> y_matrix;  // spectahedron maximizer
};

/// Bilinear saddle objective f(x) = fhat(x) + max_{y in Y} <A x, y> - g(y)
/// over a compact domain. Two shipped Y geometries:
///   - probability simplex with the entropy prox: F(x) = max_j (M x + a0)_j,
///   - spectahedron with the matrix-entropy prox: F(x) = lambda_1(A(x)).
/// The operator norm of the linear part is certified at construction (power
/// iteration for the matrix pencils, closed forms otherwise); the solvers
/// never read it, only the complexity diagnostics do.
class SaddleProblem {
 public:
  enum class YKind { simplex, spectahedron };

  struct AffineTerm {
    AffineTerm() : offset(0.0) {}
    AffineTerm(Vec s, double off) : slope(std::move(s)), offset(off) {}
    Vec slope;  // empty means zero
    double offset;
    double at(const Vec& x) const {
      return slope.empty() ? offset : offset + dot(slope, x);
    }
  };

  /// F(x) = max_j (M x + a0)_j; M is m-by-n row-major.
  static SaddleProblem simplex_max(std::size_t m, std::size_t n, Vec M_rowmajor,
                                   Vec a0, FeasibleSet domain,
                                   AffineTerm fhat = AffineTerm());

  /// F(x) = lambda_1(mats[0] + sum_i x_i mats[i+1]).
  static SaddleProblem max_eigenvalue(std::vector<eig::SymMatrix> mats,
                                      FeasibleSet domain,
                                      AffineTerm fhat = AffineTerm());

  YKind y_kind() const { return y_kind_; }
  std::size_t xdim() const { return n_; }
  std::size_t ydim() const { return m_; }
  const FeasibleSet& domain() const { return domain_; }
  const AffineTerm& fhat() const { return fhat_; }
  const std::vector<eig::SymMatrix>& matrices() const { return mats_; }

  /// Certified operator norm of the linear part, consistent with the domain
  /// and Y norms.
  double opnorm() const { return opnorm_; }
  /// Prox size of Y (ln m for both entropy setups).
  double dvy() const { return dvy_; }
  double sigma_v() const { return 1.0; }

  /// Exact f(x) = fhat + F(x) with one subgradient (max component / top
  /// eigenpair; ties broken toward the smallest index).
  OracleEval eval_F(const Vec& x) const;

  /// Smoothed term F_eta and its gradient at x.
  SmoothedEval eval_F_eta(const Vec& x, double eta) const;

  /// The inner components needed for both f(x) and f_eta(x): one pass, one
  /// decomposition in the spectahedron case.
  struct Components {
    double fhat = 0.0;
    Vec comps;  // M x + a0, or the eigenvalues of A(x)
    double f = 0.0;       // fhat + max comps
    double f_eta(double eta, double dvy) const;
  };
  Components eval_components(const Vec& x) const;

  /// Adjoint of the linear part applied to simplex weights / a symmetric
  /// matrix; used by the invariant tests.
  Vec adjoint(const Vec& y) const;
  Vec adjoint(const eig::SymMatrix& y) const;

 private:
  SaddleProblem(FeasibleSet domain, AffineTerm fhat)
      : domain_(std::move(domain)), fhat_(std::move(fhat)) {}
  void certify_opnorm();

  YKind y_kind_ = YKind::simplex;
  std::size_t n_ = 0, m_ = 0;
  FeasibleSet domain_;
  AffineTerm fhat_;
  Vec M_;   // simplex kind, row-major m x n
  Vec a0_;  // simplex kind offset
  std::vector<eig::SymMatrix> mats_;  // spectahedron kind
  double opnorm_ = 0.0;
  double dvy_ = 0.0;
};

struct UslConfig {
  double beta = 0.5;
  double theta = 0.5;
  StepKind policy = StepKind::polynomial;
  std::size_t bundle_limit = 10;
  double epsilon = 1e-4;
  double Q1 = 1.0;  // initial estimate of the Y prox size, > 0
  std::size_t max_iters_per_call = 100000;
  std::size_t max_phases = 200;
  std::optional<Vec> x0;

  double q() const { return 1.0 - (1.0 - theta) * std::min(beta, 1.0 - beta); }
};

struct UslGapResult {
  Vec p_plus;
  double lb_plus = 0.0;
  double ub_plus = 0.0;
  double d_plus = 0.0;  // unchanged on significant exits, doubled otherwise
  GapExit exit = GapExit::upper_bound;
  std::size_t iterations = 0;
  double eta = 0.0;  // smoothing weight used by this call
};

/// One smoothing-level gap-reduction call with size estimate d_tilde. Either
/// contracts the gap by q (exit lower_bound / upper_bound, d unchanged) or
/// certifies d_tilde < D_{v,Y} and doubles it (exit smoothing).
UslGapResult usl_gap(const Vec& p, double lb, double d_tilde,
                     const UslConfig& cfg, const ProxSetup& prox,
                     const SaddleProblem& prob, TraceSink& sink);

/// Parameter-free outer loop: phases call usl_gap, doubling the size
/// estimate on non-significant phases. Phase records carry the estimate in
/// q_estimate.
SolveResult usl_solve(const Vec& p0, const UslConfig& cfg,
                      const ProxSetup& prox, const SaddleProblem& prob);

}  // namespace levelopt
