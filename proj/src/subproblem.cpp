// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "levelopt/lp.hpp"

namespace levelopt {

Vec project_box(const Vec& x, const Vec& lower, const Vec& upper) {
  Vec out(x.size());
  kern::clamp(x.data(), lower.data(), upper.data(), out.data(), x.size());
  return out;
}

Vec project_simplex(const Vec& x) {
  const std::size_t n = x.size();
  Vec u = x;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cssum = 0.0;
  double theta = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cssum += u[i];
    const double t = (cssum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      theta = t;
      k = i + 1;
    }
  }
  (void)k;
  Vec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(x[i] - theta, 0.0);
  return out;
}

Vec entropy_prox_map(const Vec& g) {
  const std::size_t n = g.size();
  double m = -g[0];
  for (std::size_t i = 1; i < n; ++i) m = std::max(m, -g[i]);
  Vec out(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(-g[i] - m);
    z += out[i];
  }
  kern::scal(1.0 / z, out.data(), n);
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// LP-backed linear subproblems.
//
// Layout of the LP variables: x (n), then t (epigraph, only for multi-piece
// objectives), then u (n, only when a box-based problem carries l1 terms;
// on the simplex ||x||_1 == 1 and l1 terms fold into the offsets).
// ---------------------------------------------------------------------------

struct LpBuild {
  lp::Problem p;
  std::size_t n = 0;
  bool on_simplex = false;
  bool has_u = false;
  std::size_t t_index = 0;  // valid when has_t
  bool has_t = false;
};

LpBuild lp_base(const FeasibleSet& set, bool need_u, bool need_t) {
  LpBuild b;
  b.n = set.dim();
  b.on_simplex = set.is_simplex();
  b.has_u = need_u && !b.on_simplex;
  b.has_t = need_t;
  const std::size_t nu = b.has_u ? b.n : 0;
  b.p.nvars = b.n + (b.has_t ? 1 : 0) + nu;
  b.p.c.assign(b.p.nvars, 0.0);
  b.p.lo.assign(b.p.nvars, 0.0);
  b.p.up.assign(b.p.nvars, 0.0);
  if (b.on_simplex) {
    for (std::size_t i = 0; i < b.n; ++i) {
      b.p.lo[i] = 0.0;
      b.p.up[i] = 1.0;
    }
    lp::Problem::Row eq;
    eq.a.assign(b.p.nvars, 0.0);
    std::fill(eq.a.begin(), eq.a.begin() + b.n, 1.0);
    eq.b = 1.0;
    eq.equality = true;
    b.p.rows.push_back(std::move(eq));
  } else {
    for (std::size_t i = 0; i < b.n; ++i) {
      b.p.lo[i] = set.lower()[i];
      b.p.up[i] = set.upper()[i];
    }
  }
  if (b.has_t) b.t_index = b.n;
  if (b.has_u) {
    const std::size_t u0 = b.n + (b.has_t ? 1 : 0);
    for (std::size_t i = 0; i < b.n; ++i) {
      b.p.lo[u0 + i] = 0.0;
      b.p.up[u0 + i] = std::max(std::fabs(set.lower()[i]), std::fabs(set.upper()[i]));
      // u_i >= x_i and u_i >= -x_i
      lp::Problem::Row r1, r2;
      r1.a.assign(b.p.nvars, 0.0);
      r2.a.assign(b.p.nvars, 0.0);
      r1.a[i] = 1.0;
      r1.a[u0 + i] = -1.0;
      r2.a[i] = -1.0;
      r2.a[u0 + i] = -1.0;
      b.p.rows.push_back(std::move(r1));
      b.p.rows.push_back(std::move(r2));
    }
  }
  return b;
}

void add_constraint_row(LpBuild& b, const Vec& a, double rhs, double l1w) {
  lp::Problem::Row r;
  r.a.assign(b.p.nvars, 0.0);
  std::copy(a.begin(), a.end(), r.a.begin());
  r.b = rhs;
  if (l1w != 0.0) {
    if (b.on_simplex) {
      r.b -= l1w;  // ||x||_1 == 1
    } else {
      const std::size_t u0 = b.n + (b.has_t ? 1 : 0);
      for (std::size_t i = 0; i < b.n; ++i) r.a[u0 + i] = l1w;
    }
  }
  b.p.rows.push_back(std::move(r));
}

}  // namespace

SubproblemReport solve_lower_bound(const LocalizerSet& loc, const GenCut& cut) {
  const FeasibleSet& set = loc.base();
  bool any_l1 = cut.l1_weight != 0.0;
  for (const auto& r : loc.rows()) any_l1 = any_l1 || r.l1w != 0.0;
  const bool multi = cut.pieces.size() > 1;
  LpBuild b = lp_base(set, any_l1, multi);

  double c0 = 0.0;
  if (multi) {
    b.p.c[b.t_index] = 1.0;
    // t >= piece_j(x) (+ objective l1 term), with a finite safe lower bound.
    double tlb = 1e308;
    for (const GenCut::Piece& pc : cut.pieces) {
      const double cj = pc.value - dot(pc.slope, cut.anchor);
      tlb = std::min(tlb, set.min_linear(pc.slope) + cj);
      lp::Problem::Row r;
      r.a.assign(b.p.nvars, 0.0);
      std::copy(pc.slope.begin(), pc.slope.end(), r.a.begin());
      r.a[b.t_index] = -1.0;
      r.b = -cj;
      if (cut.l1_weight != 0.0) {
        if (b.on_simplex) {
          r.b -= cut.l1_weight;
        } else {
          const std::size_t u0 = b.n + 1;
          for (std::size_t i = 0; i < b.n; ++i) r.a[u0 + i] = cut.l1_weight;
        }
      }
      b.p.rows.push_back(std::move(r));
    }
    b.p.lo[b.t_index] = tlb - 1.0;
    b.p.up[b.t_index] = std::numeric_limits<double>::infinity();
  } else {
    const GenCut::Piece& pc = cut.pieces.front();
    std::copy(pc.slope.begin(), pc.slope.end(), b.p.c.begin());
    c0 = pc.value - dot(pc.slope, cut.anchor);
    if (cut.l1_weight != 0.0) {
      if (b.on_simplex) {
        c0 += cut.l1_weight;
      } else {
        const std::size_t u0 = b.n;
        for (std::size_t i = 0; i < b.n; ++i) b.p.c[u0 + i] = cut.l1_weight;
      }
    }
  }
  b.p.c0 = c0;

  for (const auto& r : loc.rows()) add_constraint_row(b, r.a, r.b, r.l1w);

  const lp::Solution s = lp::solve(b.p);
  SubproblemReport rep;
  rep.dual_iterations = s.pivots;
  if (s.status != lp::LpStatus::optimal) {
    rep.status = SubproblemReport::Status::infeasible;
    return rep;
  }
  rep.status = SubproblemReport::Status::optimal;
  rep.minimizer.assign(s.x.begin(), s.x.begin() + set.dim());
  rep.optimal_value = s.value;
  return rep;
}

SubproblemReport solve_bundle_min(const FeasibleSet& set,
                                  const std::vector<Cut>& bundle) {
  if (bundle.empty()) throw std::invalid_argument("solve_bundle_min: empty bundle");
  LpBuild b = lp_base(set, false, true);
  b.p.c[b.t_index] = 1.0;
  double tlb = 1e308;
  for (const Cut& c : bundle) {
    const double cj = c.value - dot(c.slope, c.anchor);
    tlb = std::min(tlb, set.min_linear(c.slope) + cj);
    lp::Problem::Row r;
    r.a.assign(b.p.nvars, 0.0);
    std::copy(c.slope.begin(), c.slope.end(), r.a.begin());
    r.a[b.t_index] = -1.0;
    r.b = -cj;
    b.p.rows.push_back(std::move(r));
  }
  b.p.lo[b.t_index] = tlb - 1.0;
  b.p.up[b.t_index] = std::numeric_limits<double>::infinity();

  const lp::Solution s = lp::solve(b.p);
  if (s.status != lp::LpStatus::optimal)
    throw std::runtime_error("solve_bundle_min: unexpected LP status");
  SubproblemReport rep;
  rep.status = SubproblemReport::Status::optimal;
  rep.minimizer.assign(s.x.begin(), s.x.begin() + set.dim());
  rep.optimal_value = s.value;
  rep.dual_iterations = s.pivots;
  return rep;
}

// ---------------------------------------------------------------------------
// Prox steps via the Lagrangian dual.
// ---------------------------------------------------------------------------

namespace {

struct DualRow {
  const Vec* a;
  double b;
  double l1w;
};

class ProxDual {
 public:
  ProxDual(const FeasibleSet& set, const ProxSetup& prox, const Vec& anchor,
           std::vector<DualRow> rows, const DualSolveOptions& opts)
      : set_(set), prox_(prox), anchor_(anchor), rows_(std::move(rows)),
        opts_(opts), n_(anchor.size()) {
    if (prox_.kind() == ProxSetup::Kind::entropy) {
      log_anchor_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i)
        log_anchor_[i] = std::log(std::max(anchor_[i], 1e-16));
    }
  }

  SubproblemReport run() {
    const std::size_t m = rows_.size();
    Vec mu(m, 0.0), grad(m, 0.0), mu_try(m, 0.0), grad_try(m, 0.0);
    Vec mu_prev(m, 0.0), grad_prev(m, 0.0);
    Vec x = inner(mu);
    double g = dual_value(x, mu, &grad);
    SubproblemReport rep;
    double step = 1.0;
    bool have_prev = false;
    // Stagnation window: the optimal multiplier may be unattained when the
    // feasible set degenerates to a point; the dual value still converges
    // and the strongly convex primal converges with it.
    double window_g = g;
    std::size_t window_start = 0;
    std::size_t it = 0;
    for (; it < opts_.max_iters; ++it) {
      double viol = 0.0, cs = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        viol = std::max(viol, grad[j]);
        cs += mu[j] * std::fabs(grad[j]);
      }
      if (viol <= opts_.feas_tol && cs <= opts_.gap_tol) break;
      if (g > opts_.diverge_threshold) {
        rep.status = SubproblemReport::Status::infeasible;
        rep.dual_iterations = it;
        return rep;
      }
      if (it >= window_start + 300) {
        if (viol <= opts_.feas_tol &&
            g - window_g <= 1e-13 * std::max(1.0, std::fabs(g)))
          break;  // dual value flat at machine precision, primal feasible
        window_g = g;
        window_start = it;
      }
      // Spectral (Barzilai-Borwein) initialization for the projected ascent
      // step, safeguarded by Armijo backtracking.
      if (have_prev) {
        double ss = 0.0, sy = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          const double s = mu[j] - mu_prev[j];
          ss += s * s;
          sy += s * (grad_prev[j] - grad[j]);  // curvature of the concave dual
        }
        // Trust the spectral estimate only when real curvature was observed;
        // near-flat stretches keep the last working step instead of
        // exploding and re-backtracking every iteration.
        if (ss > 0.0 && sy > 1e-12 * ss) step = ss / sy;
      }
      mu_prev = mu;
      grad_prev = grad;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        double dirdot = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          mu_try[j] = std::max(0.0, mu[j] + step * grad[j]);
          dirdot += grad[j] * (mu_try[j] - mu[j]);
        }
        if (dirdot <= 0.0) break;  // stationary
        Vec x_try = inner(mu_try);
        const double g_try = dual_value(x_try, mu_try, &grad_try);
        if (g_try >= g + 1e-4 * dirdot) {
          mu.swap(mu_try);
          x.swap(x_try);
          grad.swap(grad_try);
          g = g_try;
          accepted = true;
          have_prev = true;
          if (bt == 0) step = std::min(step * 2.0, 1e12);
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;  // no ascent direction left at this scale
    }
    rep.status = SubproblemReport::Status::optimal;
    rep.minimizer = x;
    rep.optimal_value = prox_.bregman(x, anchor_);
    rep.dual_iterations = it;
    return rep;
  }

 private:
  // argmin over the base set of d(x; anchor) + <s, x> + s1 ||x||_1.
  Vec inner(const Vec& mu) {
    Vec s(n_, 0.0);
    double s1 = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      if (mu[j] == 0.0) continue;
      kern::axpy(mu[j], rows_[j].a->data(), s.data(), n_);
      s1 += mu[j] * rows_[j].l1w;
    }
    if (prox_.kind() == ProxSetup::Kind::entropy) {
      // x_i proportional to anchor_i * exp(-s_i), on the simplex.
      Vec logx(n_);
      for (std::size_t i = 0; i < n_; ++i) logx[i] = log_anchor_[i] - s[i];
      const double mx = kern::max_val(logx.data(), n_);
      double z = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        logx[i] = std::exp(logx[i] - mx);
        z += logx[i];
      }
      kern::scal(1.0 / z, logx.data(), n_);
      return logx;
    }
    if (set_.is_simplex()) {
      Vec v(n_);
      for (std::size_t i = 0; i < n_; ++i) v[i] = anchor_[i] - s[i];
      return project_simplex(v);  // constant s1 on the simplex
    }
    Vec x(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      double v = anchor_[i] - s[i];
      if (s1 > 0.0) {
        if (v > s1)
          v -= s1;
        else if (v < -s1)
          v += s1;
        else
          v = 0.0;
      }
      x[i] = std::min(std::max(v, set_.lower()[i]), set_.upper()[i]);
    }
    return x;
  }

  double dual_value(const Vec& x, const Vec& mu, Vec* grad) {
    const double x1 = norm1(x);
    double g = prox_.bregman(x, anchor_);
    for (std::size_t j = 0; j < mu.size(); ++j) {
      const double slack = dot(*rows_[j].a, x) + rows_[j].l1w * x1 - rows_[j].b;
      (*grad)[j] = slack;
      g += mu[j] * slack;
    }
    return g;
  }

  const FeasibleSet& set_;
  const ProxSetup& prox_;
  const Vec& anchor_;
  std::vector<DualRow> rows_;
  DualSolveOptions opts_;
  std::size_t n_;
  Vec log_anchor_;
};

}  // namespace

SubproblemReport solve_prox_step(const LocalizerSet& loc, const ProxSetup& prox,
                                 const Vec& anchor, const GenCut& level_cut,
                                 double level, const DualSolveOptions& opts) {
  const auto level_rows = rows_of(level_cut, level);
  std::vector<DualRow> rows;
  rows.reserve(loc.rows().size() + level_rows.size());
  for (const auto& r : loc.rows()) rows.push_back({&r.a, r.b, r.l1w});
  for (const auto& r : level_rows) rows.push_back({&r.a, r.b, r.l1w});
  ProxDual solver(loc.base(), prox, anchor, std::move(rows), opts);
  return solver.run();
}

SubproblemReport solve_prox_step_bundle(const FeasibleSet& set,
                                        const Vec& center,
                                        const std::vector<Cut>& bundle,
                                        double level,
                                        const DualSolveOptions& opts) {
  static const ProxSetup euclid = ProxSetup::euclidean();
  std::vector<LocalizerSet::Row> storage;
  storage.reserve(bundle.size());
  for (const Cut& c : bundle) {
    LocalizerSet::Row r;
    r.a = c.slope;
    r.b = level - c.value + dot(c.slope, c.anchor);
    r.l1w = 0.0;
    storage.push_back(std::move(r));
  }
  std::vector<DualRow> rows;
  rows.reserve(storage.size());
  for (const auto& r : storage) rows.push_back({&r.a, r.b, r.l1w});
  ProxDual solver(set, euclid, center, std::move(rows), opts);
  return solver.run();
}

}  // namespace levelopt
