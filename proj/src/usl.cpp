// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/usl.hpp"

#include <cmath>
#include <stdexcept>

namespace levelopt {

SaddleProblem SaddleProblem::simplex_max(std::size_t m, std::size_t n,
                                         Vec M_rowmajor, Vec a0,
                                         FeasibleSet domain, AffineTerm fhat) {
  if (M_rowmajor.size() != m * n || a0.size() != m)
    throw std::invalid_argument("simplex_max: bad operator dimensions");
  if (domain.dim() != n)
    throw std::invalid_argument("simplex_max: domain dimension mismatch");
  SaddleProblem p(std::move(domain), std::move(fhat));
  p.y_kind_ = YKind::simplex;
  p.n_ = n;
  p.m_ = m;
  p.M_ = std::move(M_rowmajor);
  p.a0_ = std::move(a0);
  p.dvy_ = m > 1 ? std::log(static_cast<double>(m)) : 0.0;
  p.certify_opnorm();
  return p;
}

SaddleProblem SaddleProblem::max_eigenvalue(std::vector<eig::SymMatrix> mats,
                                            FeasibleSet domain,
                                            AffineTerm fhat) {
  if (mats.size() < 2)
    throw std::invalid_argument("max_eigenvalue: need A0 and at least one A_i");
  const std::size_t m = mats[0].dim();
  for (const auto& a : mats)
    if (a.dim() != m)
      throw std::invalid_argument("max_eigenvalue: inconsistent matrix sizes");
  if (domain.dim() + 1 != mats.size())
    throw std::invalid_argument("max_eigenvalue: domain dimension mismatch");
  SaddleProblem p(std::move(domain), std::move(fhat));
  p.y_kind_ = YKind::spectahedron;
  p.n_ = mats.size() - 1;
  p.m_ = m;
  p.mats_ = std::move(mats);
  p.dvy_ = m > 1 ? std::log(static_cast<double>(m)) : 0.0;
  p.certify_opnorm();
  return p;
}

void SaddleProblem::certify_opnorm() {
  if (y_kind_ == YKind::simplex) {
    if (domain_.is_simplex()) {
      // l1 -> linf operator norm: the largest absolute entry.
      double v = 0.0;
      for (double e : M_) v = std::max(v, std::fabs(e));
      opnorm_ = v;
    } else {
      // l2 -> linf: the largest row norm.
      double v = 0.0;
      for (std::size_t j = 0; j < m_; ++j)
        v = std::max(v, std::sqrt(kern::nrm2sq(M_.data() + j * n_, n_)));
      opnorm_ = v;
    }
    return;
  }
  if (!domain_.is_simplex())
    throw std::invalid_argument(
        "max_eigenvalue: box domains are not supported (no certified norm)");
  // l1 -> spectral: max_i ||A_i||_2, each certified by power iteration.
  double v = 0.0;
  for (std::size_t i = 1; i < mats_.size(); ++i)
    v = std::max(v, eig::spectral_norm(mats_[i]));
  opnorm_ = v;
}

double SaddleProblem::Components::f_eta(double eta, double dvy) const {
  return fhat + eig::log_sum_exp(comps, eta) - eta * dvy;
}

SaddleProblem::Components SaddleProblem::eval_components(const Vec& x) const {
  if (x.size() != n_) throw std::invalid_argument("saddle: dimension mismatch");
  Components c;
  c.fhat = fhat_.at(x);
  if (y_kind_ == YKind::simplex) {
    c.comps.resize(m_);
    for (std::size_t j = 0; j < m_; ++j)
      c.comps[j] = a0_[j] + kern::dot(M_.data() + j * n_, x.data(), n_);
  } else {
    const eig::SymMatrix ax = eig::apply_A(mats_, x);
    c.comps = eig::jacobi_eig(ax).eigenvalues;
  }
  c.f = c.fhat + kern::max_val(c.comps.data(), c.comps.size());
  return c;
}

OracleEval SaddleProblem::eval_F(const Vec& x) const {
  if (x.size() != n_) throw std::invalid_argument("saddle: dimension mismatch");
  OracleEval out;
  if (y_kind_ == YKind::simplex) {
    std::size_t best = 0;
    double bv = -1e308;
    Vec z(m_);
    for (std::size_t j = 0; j < m_; ++j) {
      z[j] = a0_[j] + kern::dot(M_.data() + j * n_, x.data(), n_);
      if (z[j] > bv) {
        bv = z[j];
        best = j;
      }
    }
    out.value = fhat_.at(x) + bv;
    out.subgrad.assign(M_.data() + best * n_, M_.data() + (best + 1) * n_);
  } else {
    const eig::SymMatrix ax = eig::apply_A(mats_, x);
    const eig::EigDecomp d = eig::jacobi_eig(ax);
    out.value = fhat_.at(x) + d.eigenvalues[0];
    // Subgradient A*(u u^T) for the top eigenvector u: entries u^T A_i u.
    const double* u = d.vector(0);
    out.subgrad.resize(n_);
    Vec tmp(m_);
    for (std::size_t i = 0; i < n_; ++i) {
      const Vec uv(u, u + m_);
      mats_[i + 1].multiply(uv, tmp);
      out.subgrad[i] = kern::dot(u, tmp.data(), m_);
    }
  }
  if (!fhat_.slope.empty()) add_scaled(out.subgrad, 1.0, fhat_.slope);
  return out;
}

SmoothedEval SaddleProblem::eval_F_eta(const Vec& x, double eta) const {
  if (eta <= 0.0) throw std::invalid_argument("eval_F_eta: eta > 0 required");
  if (x.size() != n_) throw std::invalid_argument("saddle: dimension mismatch");
  SmoothedEval out;
  out.eta = eta;
  if (y_kind_ == YKind::simplex) {
    Vec z(m_);
    for (std::size_t j = 0; j < m_; ++j)
      z[j] = a0_[j] + kern::dot(M_.data() + j * n_, x.data(), n_);
    out.value = eig::log_sum_exp(z, eta) - eta * dvy_;
    out.y_weights = eig::softmax_weights(z, eta);
    out.gradient.assign(n_, 0.0);
    for (std::size_t j = 0; j < m_; ++j)
      if (out.y_weights[j] != 0.0)
        kern::axpy(out.y_weights[j], M_.data() + j * n_, out.gradient.data(), n_);
  } else {
    const eig::SymMatrix ax = eig::apply_A(mats_, x);
    const eig::EigDecomp d = eig::jacobi_eig(ax);
    out.value = eig::log_sum_exp(d.eigenvalues, eta) - eta * dvy_;
    out.y_weights = eig::softmax_weights(d.eigenvalues, eta);
    auto y = std::make_shared<eig::SymMatrix>(eig::softmax_psd(d, eta));
    out.gradient = eig::adjoint_A(mats_, *y);
    out.y_matrix = std::move(y);
  }
  return out;
}

Vec SaddleProblem::adjoint(const Vec& y) const {
  if (y_kind_ != YKind::simplex || y.size() != m_)
    throw std::invalid_argument("adjoint: wrong Y shape");
  Vec out(n_, 0.0);
  for (std::size_t j = 0; j < m_; ++j)
    if (y[j] != 0.0) kern::axpy(y[j], M_.data() + j * n_, out.data(), n_);
  return out;
}

Vec SaddleProblem::adjoint(const eig::SymMatrix& y) const {
  if (y_kind_ != YKind::spectahedron)
    throw std::invalid_argument("adjoint: wrong Y shape");
  return eig::adjoint_A(mats_, y);
}

namespace {

class UslLevelOracle final : public LevelOracle {
 public:
  UslLevelOracle(const SaddleProblem& prob, double eta)
      : prob_(prob), eta_(eta) {}

  UpperEval upper_at(const Vec& x) override {
    const SaddleProblem::Components c = prob_.eval_components(x);
    return UpperEval{c.f, c.f_eta(eta_, prob_.dvy())};
  }

  GenCut cut_at(const Vec& x) override {
    const SmoothedEval se = prob_.eval_F_eta(x, eta_);
    GenCut cut;
    cut.anchor = x;
    GenCut::Piece p;
    p.value = prob_.fhat().at(x) + se.value;
    p.slope = se.gradient;
    if (!prob_.fhat().slope.empty()) add_scaled(p.slope, 1.0, prob_.fhat().slope);
    cut.pieces.push_back(std::move(p));
    return cut;
  }

 private:
  const SaddleProblem& prob_;
  double eta_;
};

}  // namespace

UslGapResult usl_gap(const Vec& p, double lb, double d_tilde,
                     const UslConfig& cfg, const ProxSetup& prox,
                     const SaddleProblem& prob, TraceSink& sink) {
  if (d_tilde <= 0.0) throw std::invalid_argument("usl_gap: d_tilde > 0 required");
  const SaddleProblem::Components c0 = prob.eval_components(p);
  ++sink.oracle_calls;
  const double fbar0 = c0.f;
  const double level = cfg.beta * lb + (1.0 - cfg.beta) * fbar0;
  const double eta = cfg.theta * (fbar0 - level) / (2.0 * d_tilde);
  UslGapResult out;
  out.eta = eta;
  if (!(eta > 0.0)) {
    // Degenerate call (gap already closed): nothing to reduce.
    out.p_plus = p;
    out.lb_plus = lb;
    out.ub_plus = fbar0;
    out.d_plus = d_tilde;
    out.exit = GapExit::upper_bound;
    return out;
  }
  UslLevelOracle oracle(prob, eta);
  const UpperEval at_p{fbar0, c0.f_eta(eta, prob.dvy())};

  LevelGapParams params;
  params.beta = cfg.beta;
  params.theta = cfg.theta;
  params.policy = cfg.policy;
  params.bundle_limit = cfg.bundle_limit;
  params.max_iters = cfg.max_iters_per_call;
  params.smoothing_exit = true;
  params.x0 = cfg.x0;

  const LevelGapResult r =
      level_gap(oracle, prob.domain(), prox, p, at_p, lb, params, sink);
  out.p_plus = r.p_plus;
  out.lb_plus = r.lb_plus;
  out.ub_plus = r.ub_plus;
  out.exit = r.exit;
  out.iterations = r.iterations;
  out.d_plus = r.exit == GapExit::smoothing ? 2.0 * d_tilde : d_tilde;
  return out;
}

SolveResult usl_solve(const Vec& p0, const UslConfig& cfg,
                      const ProxSetup& prox, const SaddleProblem& prob) {
  if (!(cfg.Q1 > 0.0)) throw std::invalid_argument("usl_solve: Q1 > 0 required");
  if (!prob.domain().contains(p0, 1e-9))
    throw std::invalid_argument("usl_solve: infeasible start");
  SolveResult out;
  TraceSink sink;
  sink.trace = &out.trace;

  // Initial bounds from the unsmoothed cut at p0.
  const OracleEval e0 = prob.eval_F(p0);
  ++sink.oracle_calls;
  Vec p;
  double lb = prob.domain().min_linear(e0.subgrad, &p);
  lb += e0.value - dot(e0.subgrad, p0);
  const SaddleProblem::Components c1 = prob.eval_components(p);
  ++sink.oracle_calls;
  double ub = c1.f;

  double q_estimate = cfg.Q1;
  for (std::size_t s = 1; s <= cfg.max_phases; ++s) {
    if (ub - lb <= cfg.epsilon) break;
    sink.phase = s;
    PhaseRecord ph;
    ph.phase_index = s;
    ph.delta0 = ub - lb;
    ph.q_estimate = q_estimate;
    const UslGapResult r = usl_gap(p, lb, q_estimate, cfg, prox, prob, sink);
    ph.iterations = r.iterations;
    ph.significant = r.exit == GapExit::lower_bound || r.exit == GapExit::upper_bound;
    ph.exit = r.exit;
    out.trace.phases.push_back(ph);
    p = r.p_plus;
    lb = r.lb_plus;
    ub = r.ub_plus;
    q_estimate = r.d_plus;
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

}  // namespace levelopt
