// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levelopt/composite.hpp"
#include "test_util.hpp"

using namespace levelopt;

namespace {

// f1(x) = ||x - a||^2 with slope 2(x - a)
InnerEval quad_component(const Vec& x, const Vec& a) {
  InnerEval e;
  e.values.push_back(dist2sq(x, a));
  Vec g = sub(x, a);
  kern::scal(2.0, g.data(), g.size());
  e.slopes.push_back(std::move(g));
  return e;
}

}  // namespace

TEST_CASE("identity template reduces to the plain cut") {
  testutil::Rng rng(21);
  const PsiTemplate psi = PsiTemplate::identity();
  for (int t = 0; t < 10; ++t) {
    const Vec z = rng.vec_uniform(3, -1.0, 1.0);
    InnerEval e;
    e.values.push_back(rng.uniform(-2.0, 2.0));
    e.slopes.push_back(rng.vec_uniform(3, -1.0, 1.0));
    const GenCut g = support_cut(z, e, psi);
    const Cut plain{z, e.values[0], e.slopes[0]};
    for (int s = 0; s < 10; ++s) {
      const Vec x = rng.vec_uniform(3, -1.0, 1.0);
      CHECK(g.eval(x) == plain.eval(x));
    }
  }
}

TEST_CASE("max template reconstructs |x| exactly from phi = (x, -x)") {
  const PsiTemplate psi = PsiTemplate::max_of(2);
  InnerEval at0;
  at0.values = {0.0, 0.0};
  at0.slopes = {{1.0}, {-1.0}};
  const GenCut cut = support_cut({0.0}, at0, psi);
  for (double x : {-1.0, -0.3, 0.0, 0.4, 1.0}) {
    CHECK(cut.eval({x}) == doctest::Approx(std::fabs(x)));
    CHECK(cut.eval({x}) <= std::fabs(x) + 1e-15);  // under-estimation
  }
}

TEST_CASE("affine second component enters the sum cut exactly") {
  // phi = (quadratic, affine): the affine part has zero curvature, so the
  // cut is exact in that direction.
  const Vec a{0.5, -0.5};
  const Vec c{1.0, 2.0};
  const PsiTemplate psi = PsiTemplate::sum_of_two();
  auto inner = [&](const Vec& x) {
    InnerEval e = quad_component(x, a);
    e.values.push_back(dot(c, x));
    e.slopes.push_back(c);
    return e;
  };
  testutil::Rng rng(22);
  const Vec z = rng.vec_uniform(2, -1.0, 1.0);
  const GenCut cut = support_cut(z, inner(z), psi);
  for (int t = 0; t < 30; ++t) {
    const Vec x = rng.vec_uniform(2, -1.0, 1.0);
    const double fx = dist2sq(x, a) + dot(c, x);
    CHECK(cut.eval(x) <= fx + 1e-12);
    // exactness along the affine coordinate: at x = z the cut is tight
  }
  CHECK(cut.eval(z) == doctest::Approx(dist2sq(z, a) + dot(c, z)));
}

TEST_CASE("under-estimation and the smoothness sandwich on samples") {
  // f = max(||x-a||^2, ||x-b||^2): M0 = 1, M_i = 2, rho_i = 1.
  const Vec a{0.2, 0.1}, b{-0.4, 0.5};
  const PsiTemplate psi = PsiTemplate::max_of(2);
  auto inner = [&](const Vec& x) {
    InnerEval ea = quad_component(x, a);
    InnerEval eb = quad_component(x, b);
    ea.values.push_back(eb.values[0]);
    ea.slopes.push_back(eb.slopes[0]);
    return ea;
  };
  auto f = [&](const Vec& x) { return std::max(dist2sq(x, a), dist2sq(x, b)); };
  testutil::Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const Vec z = rng.vec_uniform(2, -1.0, 1.0);
    const Vec x = rng.vec_uniform(2, -1.0, 1.0);
    const GenCut cut = support_cut(z, inner(z), psi);
    const double hzx = cut.eval(x);
    const double fx = f(x);
    CHECK(hzx <= fx + 1e-12);
    // Psi(phi(x)) <= h + M0 * sum_i M_i/(1+rho_i) ||x-z||^(1+rho_i)
    const double slack = 2.0 * (2.0 / 2.0) * dist2sq(x, z);
    CHECK(fx <= hzx + slack + 1e-12);
  }
}

TEST_CASE("l1-regression composite solve reaches the closed-form optimum") {
  // f(x) = 0.5 ||x - a||^2 + w ||x||_1 on a box; per-coordinate
  // soft-threshold gives the exact optimum.
  const std::size_t n = 5;
  const double w = 1.0;
  testutil::Rng rng(24);
  const Vec a = rng.vec_uniform(n, -2.0, 2.0);
  const Vec lo(n, -1.5), hi(n, 1.5);
  const FeasibleSet box = FeasibleSet::box(lo, hi);

  double fstar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = a[i] > w ? a[i] - w : (a[i] < -w ? a[i] + w : 0.0);
    t = std::min(std::max(t, lo[i]), hi[i]);
    fstar += 0.5 * (t - a[i]) * (t - a[i]) + w * std::fabs(t);
  }

  const PsiTemplate psi = PsiTemplate::linear_plus_l1(w);
  const InnerOracle inner = [&](const Vec& x) {
    InnerEval e;
    e.values.push_back(0.5 * dist2sq(x, a));
    e.slopes.push_back(sub(x, a));
    return e;
  };
  AplConfig cfg;
  cfg.epsilon = 1e-5;
  const SolveResult r = apl_composite_solve(Vec(n, 0.0), cfg,
                                            ProxSetup::euclidean(), box, inner, psi);
  REQUIRE(r.trace.status == RunStatus::converged);
  CHECK(r.ub - r.lb <= 1e-5);
  CHECK(r.lb <= fstar + 1e-9);
  CHECK(r.ub >= fstar - 1e-9);
  CHECK(std::fabs(r.ub - fstar) <= 1e-5);
}

TEST_CASE("minimax composite solve against the grid oracle") {
  // f = max(||x-a||^2, ||x-b||^2) on the unit box, n = 2.
  const Vec a{0.35, 0.1}, b{-0.2, 0.55};
  const FeasibleSet box = FeasibleSet::box({-1.0, -1.0}, {1.0, 1.0});
  const PsiTemplate psi = PsiTemplate::max_of(2);
  const InnerOracle inner = [&](const Vec& x) {
    InnerEval ea = quad_component(x, a);
    InnerEval eb = quad_component(x, b);
    ea.values.push_back(eb.values[0]);
    ea.slopes.push_back(eb.slopes[0]);
    return ea;
  };
  AplConfig cfg;
  cfg.epsilon = 1e-5;
  const SolveResult r = apl_composite_solve({0.9, -0.9}, cfg,
                                            ProxSetup::euclidean(), box, inner, psi);
  REQUIRE(r.trace.status == RunStatus::converged);
  const double fgrid = testutil::grid_min_box2(
      [&](const Vec& x) { return std::max(dist2sq(x, a), dist2sq(x, b)); },
      -1.0, 1.0, -1.0, 1.0, 1e-3);
  CHECK(r.ub - r.lb <= 1e-5);
  CHECK(r.ub <= fgrid + 1e-5);          // the solver may only do better
  CHECK(r.ub >= fgrid - 5e-3);          // grid resolution slack
  CHECK(r.lb <= fgrid + 1e-9);
}

TEST_CASE("identity composite trace is bitwise identical to the plain path") {
  const FeasibleSet box = FeasibleSet::box({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0});
  const Vec center{0.2, -0.4, 0.3};
  const Oracle plain = [&](const Vec& x) {
    const double r = std::sqrt(dist2sq(x, center));
    OracleEval e;
    e.value = r;
    e.subgrad.assign(x.size(), 0.0);
    if (r > 0.0)
      for (std::size_t i = 0; i < x.size(); ++i)
        e.subgrad[i] = (x[i] - center[i]) / r;
    return e;
  };
  const InnerOracle inner = [&](const Vec& x) {
    const OracleEval e = plain(x);
    InnerEval ie;
    ie.values.push_back(e.value);
    ie.slopes.push_back(e.subgrad);
    return ie;
  };
  AplConfig cfg;
  cfg.epsilon = 1e-5;
  const Vec p0{0.8, 0.8, -0.8};
  const SolveResult ra = apl_solve(p0, cfg, ProxSetup::euclidean(), box, plain);
  const SolveResult rc = apl_composite_solve(p0, cfg, ProxSetup::euclidean(), box,
                                             inner, PsiTemplate::identity());
  REQUIRE(ra.trace.rows.size() == rc.trace.rows.size());
  for (std::size_t i = 0; i < ra.trace.rows.size(); ++i) {
    CHECK(ra.trace.rows[i].ub == rc.trace.rows[i].ub);
    CHECK(ra.trace.rows[i].lb == rc.trace.rows[i].lb);
    CHECK(ra.trace.rows[i].iter == rc.trace.rows[i].iter);
    CHECK(ra.trace.rows[i].phase == rc.trace.rows[i].phase);
    CHECK(ra.trace.rows[i].oracle_calls == rc.trace.rows[i].oracle_calls);
  }
  CHECK(ra.ub == rc.ub);
  CHECK(ra.lb == rc.lb);
  CHECK(ra.solution == rc.solution);
}
