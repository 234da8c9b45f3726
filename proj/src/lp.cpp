// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levelopt::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Simplex {
 public:
  explicit Simplex(const Problem& p) : prob_(p) { build(); }

  Solution run() {
    Solution sol;
    // Phase 1: drive the artificials to zero.
    if (art_needed_) {
      set_costs(phase1_costs_);
      if (!iterate()) throw std::runtime_error("lp: phase-1 stall");
      if (objective() > 1e-7 * scale_) {
        sol.status = LpStatus::infeasible;
        sol.pivots = pivots_;
        return sol;
      }
    }
    // Phase 2: original costs; artificials pinned at zero.
    for (std::size_t j = 0; j < nrows_; ++j) up_[art0_ + j] = 0.0;
    set_costs(phase2_costs_);
    if (!iterate()) throw std::runtime_error("lp: phase-2 stall");
    if (unbounded_) {
      sol.status = LpStatus::unbounded;
      sol.pivots = pivots_;
      return sol;
    }
    sol.status = LpStatus::optimal;
    sol.x.assign(xval_.begin(), xval_.begin() + prob_.nvars);
    sol.value = prob_.c0;
    for (std::size_t j = 0; j < prob_.nvars; ++j)
      sol.value += prob_.c[j] * xval_[j];
    sol.row_duals = extract_duals();
    sol.pivots = pivots_;
    return sol;
  }

 private:
  void build() {
    nrows_ = prob_.rows.size();
    nstruct_ = prob_.nvars;
    slack0_ = nstruct_;
    nslack_ = 0;
    for (const auto& r : prob_.rows)
      if (!r.equality) ++nslack_;
    art0_ = slack0_ + nslack_;
    ntot_ = art0_ + nrows_;

    scale_ = 1.0;
    for (const auto& r : prob_.rows) {
      for (double v : r.a) scale_ = std::max(scale_, std::fabs(v));
      scale_ = std::max(scale_, std::fabs(r.b));
    }

    lo_.assign(ntot_, 0.0);
    up_.assign(ntot_, kInf);
    for (std::size_t j = 0; j < nstruct_; ++j) {
      lo_[j] = prob_.lo[j];
      up_[j] = prob_.up[j];
      if (!std::isfinite(lo_[j]))
        throw std::invalid_argument("lp: lower bounds must be finite");
      if (up_[j] < lo_[j]) throw std::invalid_argument("lp: up < lo");
    }

    // Tableau rows: a.x + slack (for <=) + sign * artificial = b.
    tab_.assign(nrows_, Vec(ntot_, 0.0));
    rhs_.assign(nrows_, 0.0);
    slack_of_row_.assign(nrows_, SIZE_MAX);
    art_sign_.assign(nrows_, 1.0);
    std::size_t s = slack0_;
    for (std::size_t i = 0; i < nrows_; ++i) {
      const auto& r = prob_.rows[i];
      if (r.a.size() != nstruct_) throw std::invalid_argument("lp: row dim mismatch");
      std::copy(r.a.begin(), r.a.end(), tab_[i].begin());
      rhs_[i] = r.b;
      if (!r.equality) {
        tab_[i][s] = 1.0;
        slack_of_row_[i] = s++;
      }
    }

    // Start: structurals at the bound nearer zero, slacks at zero; make the
    // slack basic when that is already feasible, else the artificial.
    xval_.assign(ntot_, 0.0);
    at_upper_.assign(ntot_, false);
    for (std::size_t j = 0; j < nstruct_; ++j) {
      const bool use_up = std::isfinite(up_[j]) && std::fabs(up_[j]) < std::fabs(lo_[j]);
      xval_[j] = use_up ? up_[j] : lo_[j];
      at_upper_[j] = use_up && up_[j] != lo_[j];
    }

    basis_.assign(nrows_, SIZE_MAX);
    in_basis_.assign(ntot_, false);
    art_needed_ = false;
    for (std::size_t i = 0; i < nrows_; ++i) {
      double resid = rhs_[i];
      for (std::size_t j = 0; j < nstruct_; ++j) resid -= tab_[i][j] * xval_[j];
      const std::size_t art = art0_ + i;
      if (slack_of_row_[i] != SIZE_MAX && resid >= 0.0) {
        basis_[i] = slack_of_row_[i];
        xval_[slack_of_row_[i]] = resid;
      } else {
        art_sign_[i] = resid >= 0.0 ? 1.0 : -1.0;
        tab_[i][art] = art_sign_[i];
        basis_[i] = art;
        xval_[art] = std::fabs(resid);
        art_needed_ = true;
      }
      in_basis_[basis_[i]] = true;
      // Normalize the basic column to the identity.
      const double piv = tab_[i][basis_[i]];
      if (piv != 1.0)
        for (std::size_t j = 0; j < ntot_; ++j) tab_[i][j] /= piv;
    }
    // The starting basis is already the identity (slack/artificial columns
    // appear in their own row only), so no elimination pass is required.

    phase1_costs_.assign(ntot_, 0.0);
    for (std::size_t i = 0; i < nrows_; ++i) phase1_costs_[art0_ + i] = 1.0;
    phase2_costs_.assign(ntot_, 0.0);
    std::copy(prob_.c.begin(), prob_.c.end(), phase2_costs_.begin());
  }

  void set_costs(const Vec& c) {
    costs_ = &c;
    drow_ = c;
    for (std::size_t i = 0; i < nrows_; ++i) {
      const double cb = c[basis_[i]];
      if (cb != 0.0)
        for (std::size_t j = 0; j < ntot_; ++j) drow_[j] -= cb * tab_[i][j];
    }
  }

  double objective() const {
    double v = 0.0;
    for (std::size_t j = 0; j < ntot_; ++j) v += (*costs_)[j] * xval_[j];
    return v;
  }

  // Returns false only on a stall (iteration cap).
  bool iterate() {
    unbounded_ = false;
    const double dtol = 1e-9 * std::max(1.0, scale_);
    const std::size_t cap = 2000 + 60 * (nrows_ + ntot_);
    std::size_t degenerate_streak = 0;
    for (std::size_t it = 0; it < cap; ++it) {
      const bool bland = degenerate_streak > 2 * (nrows_ + 10);
      // Pricing.
      std::size_t enter = SIZE_MAX;
      double best = dtol;
      int dir = 0;
      for (std::size_t j = 0; j < ntot_; ++j) {
        if (in_basis_[j] || lo_[j] == up_[j]) continue;
        const double d = drow_[j];
        if (!at_upper_[j] && d < -best) {
          enter = j;
          best = bland ? best : -d;
          dir = +1;
          if (bland) break;
        } else if (at_upper_[j] && d > best) {
          enter = j;
          best = bland ? best : d;
          dir = -1;
          if (bland) break;
        }
      }
      if (enter == SIZE_MAX) return true;  // optimal for current costs

      // Ratio test.
      double t = std::isfinite(up_[enter]) ? up_[enter] - lo_[enter] : kInf;
      std::size_t leave_row = SIZE_MAX;
      bool leave_at_upper = false;
      for (std::size_t i = 0; i < nrows_; ++i) {
        const double coef = tab_[i][enter];
        const double delta = -dir * coef;  // basic value moves by delta * t
        if (std::fabs(delta) <= 1e-11) continue;
        const std::size_t bj = basis_[i];
        double ti;
        bool hits_upper;
        if (delta > 0.0) {
          if (!std::isfinite(up_[bj])) continue;
          ti = (up_[bj] - xval_[bj]) / delta;
          hits_upper = true;
        } else {
          ti = (xval_[bj] - lo_[bj]) / (-delta);
          hits_upper = false;
        }
        if (ti < 0.0) ti = 0.0;
        if (ti < t - 1e-12 ||
            (bland && ti < t + 1e-12 && leave_row != SIZE_MAX &&
             basis_[i] < basis_[leave_row])) {
          t = ti;
          leave_row = i;
          leave_at_upper = hits_upper;
        }
      }
      if (!std::isfinite(t)) {
        unbounded_ = true;
        return true;
      }
      degenerate_streak = t <= 1e-11 ? degenerate_streak + 1 : 0;

      // Move the entering variable and the basics.
      if (t > 0.0) {
        for (std::size_t i = 0; i < nrows_; ++i) {
          const double coef = tab_[i][enter];
          if (coef != 0.0) xval_[basis_[i]] -= dir * t * coef;
        }
        xval_[enter] += dir * t;
      }
      ++pivots_;

      if (leave_row == SIZE_MAX) {
        // Bound flip.
        at_upper_[enter] = !at_upper_[enter];
        xval_[enter] = at_upper_[enter] ? up_[enter] : lo_[enter];
        continue;
      }

      const std::size_t leave = basis_[leave_row];
      in_basis_[leave] = false;
      at_upper_[leave] = leave_at_upper;
      xval_[leave] = leave_at_upper ? up_[leave] : lo_[leave];
      basis_[leave_row] = enter;
      in_basis_[enter] = true;

      // Eliminate the entering column.
      Vec& prow = tab_[leave_row];
      const double piv = prow[enter];
      const double inv = 1.0 / piv;
      for (std::size_t j = 0; j < ntot_; ++j) prow[j] *= inv;
      prow[enter] = 1.0;
      for (std::size_t i = 0; i < nrows_; ++i) {
        if (i == leave_row) continue;
        const double f = tab_[i][enter];
        if (f == 0.0) continue;
        Vec& row = tab_[i];
        for (std::size_t j = 0; j < ntot_; ++j) row[j] -= f * prow[j];
        row[enter] = 0.0;
      }
      const double fd = drow_[enter];
      if (fd != 0.0) {
        for (std::size_t j = 0; j < ntot_; ++j) drow_[j] -= fd * prow[j];
        drow_[enter] = 0.0;
      }
    }
    return false;
  }

  Vec extract_duals() const {
    // Multiplier for row i in the sign convention of
    //   L = c.x + sum_i mu_i (a_i.x - b_i),   mu_i >= 0 for <= rows.
    Vec mu(nrows_, 0.0);
    for (std::size_t i = 0; i < nrows_; ++i) {
      if (slack_of_row_[i] != SIZE_MAX) {
        mu[i] = drow_[slack_of_row_[i]];
      } else {
        const double d = drow_[art0_ + i];
        mu[i] = art_sign_[i] * d;
      }
      if (!prob_.rows[i].equality && mu[i] < 0.0) mu[i] = 0.0;
    }
    return mu;
  }

  const Problem& prob_;
  std::size_t nrows_ = 0, nstruct_ = 0, nslack_ = 0;
  std::size_t slack0_ = 0, art0_ = 0, ntot_ = 0;
  double scale_ = 1.0;
  std::vector<Vec> tab_;
  Vec rhs_, lo_, up_, xval_, drow_;
  Vec phase1_costs_, phase2_costs_;
  const Vec* costs_ = nullptr;
  Vec art_sign_;
  std::vector<std::size_t> basis_, slack_of_row_;
  std::vector<bool> in_basis_;
  std::vector<bool> at_upper_;
  bool art_needed_ = false;
  bool unbounded_ = false;
  std::size_t pivots_ = 0;
};

}  // namespace

Solution solve(const Problem& p) {
  if (p.c.size() != p.nvars || p.lo.size() != p.nvars || p.up.size() != p.nvars)
    throw std::invalid_argument("lp: inconsistent problem dimensions");
  Simplex s(p);
  return s.run();
}

}  // namespace levelopt::lp
