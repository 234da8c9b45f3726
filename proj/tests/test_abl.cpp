// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levelopt/abl.hpp"
#include "levelopt/bounds.hpp"
#include "test_util.hpp"

using namespace levelopt;

namespace {

Oracle affine_oracle(const Vec& c, double offset = 0.0) {
  return [c, offset](const Vec& x) {
    return OracleEval{offset + dot(c, x), c};
  };
}

// f(x) = ||x - center||^(1+rho) / (1+rho); subgradient ||d||^(rho-1) d.
Oracle hoelder_oracle(const Vec& center, double rho) {
  return [center, rho](const Vec& x) {
    const double r = std::sqrt(dist2sq(x, center));
    OracleEval e;
    e.value = std::pow(r, 1.0 + rho) / (1.0 + rho);
    e.subgrad.assign(x.size(), 0.0);
    if (r > 0.0)
      for (std::size_t i = 0; i < x.size(); ++i)
        e.subgrad[i] = std::pow(r, rho - 1.0) * (x[i] - center[i]);
    return e;
  };
}

}  // namespace

TEST_CASE("abl_gap on an affine objective") {
  // The cut of an affine function is exact, so the first bundle minimum is
  // the true optimum and the call contracts at k = 1.
  const FeasibleSet box = FeasibleSet::box({-1.0, -1.0}, {1.0, 1.0});
  const Vec c{1.0, -2.0};
  const Oracle f = affine_oracle(c);
  const double fstar = -3.0;  // at (-1, 1)
  AblConfig cfg;
  cfg.lambda = 0.75;
  TraceSink sink;
  const Vec p{0.5, 0.0};
  const double fp = 0.5;
  const double lb = fstar - 2.0;
  const AblGapResult r = abl_gap(p, lb, cfg, box, f, sink);
  CHECK(r.contracted);
  CHECK(r.iterations == 1);
  CHECK(r.lb_plus == doctest::Approx(fstar));  // exact cut
  CHECK(r.ub_plus - r.lb_plus <= cfg.lambda * (fp - lb) + 1e-12);
}

TEST_CASE("abl_solve on an affine objective converges immediately") {
  const FeasibleSet box = FeasibleSet::box({-1.0}, {2.0});
  const Oracle f = affine_oracle({3.0}, 1.0);
  AblConfig cfg;
  cfg.epsilon = 1e-9;
  const SolveResult r = abl_solve({1.0}, cfg, box, f);
  CHECK(r.ub - r.lb <= 1e-12);  // initial linearization is exact
  CHECK(r.trace.phases.empty());
  CHECK(r.ub == doctest::Approx(-2.0));
}

TEST_CASE("abl_gap iteration cap from the damping constants") {
  // f = x^2/2 on [-1,1]: M = 1, rho = 1, DX = 2. Initial bounds from the
  // linearization at p0 = 1.
  const FeasibleSet box = FeasibleSet::box({-1.0}, {1.0});
  const Oracle f = hoelder_oracle({0.0}, 1.0);  // = x^2/2 in 1-d
  // h(1, x) = 1/2 + (x - 1): minimized at x = -1 with value -3/2.
  const Vec p1{-1.0};
  const double lb1 = -1.5;
  const double ub1 = 0.5;
  for (StepKind kind : {StepKind::polynomial, StepKind::recursive}) {
    AblConfig cfg;
    cfg.lambda = 0.75;
    cfg.policy = kind;
    TraceSink sink;
    const AblGapResult r = abl_gap(p1, lb1, cfg, box, f, sink);
    CHECK(r.contracted);
    const double kcap = bounds::k_abl(ub1 - lb1, cfg.lambda, kind, 1.0, 1.0, 2.0);
    CHECK(static_cast<double>(r.iterations) <= kcap);
    CHECK(r.ub_plus - r.lb_plus <= cfg.lambda * (ub1 - lb1) + 1e-12);
  }
}

TEST_CASE("abl_gap respects the contraction contract at lambda = 0.9") {
  const FeasibleSet box = FeasibleSet::box({-1.0, -1.0}, {1.0, 1.0});
  const Oracle f = hoelder_oracle({0.2, -0.1}, 0.0);
  AblConfig cfg;
  cfg.lambda = 0.9;
  TraceSink sink;
  const Vec p{1.0, 1.0};
  const OracleEval ep = f(p);
  const double lb = -0.5;
  const AblGapResult r = abl_gap(p, lb, cfg, box, f, sink);
  CHECK(r.contracted);
  CHECK(r.ub_plus - r.lb_plus <= 0.9 * (ep.value - lb) + 1e-12);
}

TEST_CASE("abl_solve brackets the optimum of |x|") {
  const FeasibleSet box = FeasibleSet::box({-1.0}, {1.0});
  const Oracle f = hoelder_oracle({0.0}, 0.0);  // |x|
  AblConfig cfg;
  cfg.epsilon = 1e-4;
  const SolveResult r = abl_solve({0.7}, cfg, box, f);
  CHECK(r.trace.status == RunStatus::converged);
  CHECK(r.lb <= 0.0 + 1e-12);
  CHECK(r.ub >= 0.0);
  CHECK(r.ub - r.lb <= 1e-4);
  // per-phase contraction
  REQUIRE(!r.trace.phases.empty());
  double prev = r.trace.phases.front().delta0;
  for (std::size_t i = 1; i < r.trace.phases.size(); ++i) {
    CHECK(r.trace.phases[i].delta0 <= cfg.lambda * prev * (1.0 + 1e-12));
    prev = r.trace.phases[i].delta0;
  }
}

TEST_CASE("abl invariants on an instrumented run") {
  const FeasibleSet box = FeasibleSet::box({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0});
  const Vec center{0.3, -0.2, 0.5};
  const double rho = 0.5;
  const double M = std::pow(2.0, 1.0 - rho);
  const Oracle f = hoelder_oracle(center, rho);
  AblConfig cfg;
  cfg.epsilon = 1e-5;
  const SolveResult r = abl_solve({0.9, 0.9, -0.9}, cfg, box, f);
  REQUIRE(r.trace.status == RunStatus::converged);
  const double DX = box.euclidean_diameter();

  // bounds monotone across the whole run
  double ub = 1e308, lb = -1e308;
  for (const auto& row : r.trace.rows) {
    CHECK(row.ub <= ub + 1e-12);
    CHECK(row.lb >= lb - 1e-12);
    ub = row.ub;
    lb = row.lb;
    CHECK(row.lb <= row.ub);
  }

  // prox-center clustering and the per-iteration damping recursion
  std::size_t i = 0;
  for (const auto& ph : r.trace.phases) {
    double cluster = 0.0;
    double prev_gap = ph.delta0;
    for (std::size_t k = 0; k < ph.iterations; ++k, ++i) {
      const auto& row = r.trace.rows[i];
      cluster += row.diag.prox_move_sq;
      const double move = std::pow(row.diag.alpha, 2.0) * row.diag.prox_move_sq;
      const double slack = M / (1.0 + rho) * std::pow(move, (1.0 + rho) / 2.0);
      CHECK(row.gap <=
            (1.0 - cfg.lambda * row.diag.alpha) * prev_gap + slack + 1e-9);
      prev_gap = row.gap;
    }
    CHECK(cluster <= DX * DX + 1e-9);
    // per-call iteration cap with the instance constants
    CHECK(static_cast<double>(ph.iterations) <=
          bounds::k_abl(ph.delta0, cfg.lambda, cfg.policy, M, rho, DX));
  }
  CHECK(i == r.trace.rows.size());
}
