// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "levelopt/sym_eigen.hpp"
#include "test_util.hpp"

using namespace levelopt;
using eig::SymMatrix;

namespace {

SymMatrix random_sym(testutil::Rng& rng, std::size_t m, double scale = 1.0) {
  SymMatrix a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) a.set(i, j, scale * rng.normal());
  return a;
}

double reconstruction_resid(const SymMatrix& a, const eig::EigDecomp& d) {
  const std::size_t m = a.dim();
  double num = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < m; ++k)
        v += d.eigenvalues[k] * d.vector(k)[i] * d.vector(k)[j];
      const double r = v - a(i, j);
      num += r * r;
    }
  return std::sqrt(num);
}

double orthogonality_resid(const eig::EigDecomp& d) {
  const std::size_t m = d.dim;
  double num = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double v = kern::dot(d.vector(i), d.vector(j), m);
      if (i == j) v -= 1.0;
      num += v * v;
    }
  return std::sqrt(num);
}

}  // namespace

TEST_CASE("jacobi on tiny known matrices") {
  SymMatrix d(2);
  d.set(0, 0, 3.0);
  d.set(1, 1, 1.0);
  auto e = eig::jacobi_eig(d);
  CHECK(e.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(std::fabs(e.vector(0)[0]) == doctest::Approx(1.0));

  SymMatrix f(2);
  f.set(0, 1, 1.0);
  auto ef = eig::jacobi_eig(f);
  CHECK(ef.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(ef.eigenvalues[1] == doctest::Approx(-1.0));
}

TEST_CASE("jacobi residuals on random symmetric matrices") {
  testutil::Rng rng(77);
  for (std::size_t m : {5, 20, 50}) {
    const SymMatrix a = random_sym(rng, m);
    const auto d = eig::jacobi_eig(a);
    CHECK(reconstruction_resid(a, d) <= 1e-10 * std::max(1.0, a.fro_norm()));
    CHECK(orthogonality_resid(d) <= 1e-10);
    // eigenvalue sum == trace
    double s = 0.0;
    for (double v : d.eigenvalues) s += v;
    CHECK(s == doctest::Approx(a.trace()).epsilon(1e-10));
    // descending order
    for (std::size_t i = 1; i < m; ++i)
      CHECK(d.eigenvalues[i - 1] >= d.eigenvalues[i] - 1e-12);
    // sign convention: first nonzero component positive
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (d.vector(i)[j] != 0.0) {
          CHECK(d.vector(i)[j] > 0.0);
          break;
        }
      }
    }
  }
}

TEST_CASE("eigenvalue continuity under small perturbation (Weyl)") {
  testutil::Rng rng(78);
  const SymMatrix a = random_sym(rng, 12);
  SymMatrix b = a;
  SymMatrix noise(12);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i; j < 12; ++j) noise.set(i, j, 1e-8 * rng.normal());
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i; j < 12; ++j) b.set(i, j, a(i, j) + noise(i, j));
  const auto da = eig::jacobi_eig(a);
  const auto db = eig::jacobi_eig(b);
  const double bound = eig::spectral_norm(noise) + 1e-10;
  for (std::size_t i = 0; i < 12; ++i)
    CHECK(std::fabs(da.eigenvalues[i] - db.eigenvalues[i]) <= bound);
}

TEST_CASE("apply_A and adjoint_A") {
  testutil::Rng rng(79);
  const std::size_t m = 6, n = 4;
  std::vector<SymMatrix> mats;
  for (std::size_t i = 0; i <= n; ++i) mats.push_back(random_sym(rng, m));

  SUBCASE("x = 0 gives A0") {
    const SymMatrix r = eig::apply_A(mats, Vec(n, 0.0));
    CHECK(r.fro_dot(r) == doctest::Approx(mats[0].fro_dot(mats[0])));
  }
  SUBCASE("n=1, A0=0, x=2 gives 2 A1") {
    std::vector<SymMatrix> two{SymMatrix(m), mats[1]};
    const SymMatrix r = eig::apply_A(two, Vec{2.0});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        CHECK(r(i, j) == doctest::Approx(2.0 * mats[1](i, j)));
  }
  SUBCASE("adjoint identity on random pairs") {
    for (int t = 0; t < 20; ++t) {
      const Vec x = rng.vec_uniform(n, -1.0, 1.0);
      const SymMatrix y = random_sym(rng, m);
      // <A(x) - A(0), Y>_F == <x, A*(Y)> (the linear part obeys adjointness)
      const SymMatrix ax = eig::apply_A(mats, x);
      const SymMatrix a0 = eig::apply_A(mats, Vec(n, 0.0));
      double lhs = ax.fro_dot(y) - a0.fro_dot(y);
      const Vec aty = eig::adjoint_A(mats, y);
      CHECK(lhs == doctest::Approx(dot(x, aty)).epsilon(1e-10));
    }
  }
  SUBCASE("diagonal picking") {
    // A_i = e_i e_i^T, Y = diag(d) -> adjoint is d
    std::vector<SymMatrix> basis;
    basis.push_back(SymMatrix(3));
    for (std::size_t i = 0; i < 3; ++i) {
      SymMatrix e(3);
      e.set(i, i, 1.0);
      basis.push_back(e);
    }
    SymMatrix yd(3);
    yd.set(0, 0, 4.0);
    yd.set(1, 1, -2.0);
    yd.set(2, 2, 0.5);
    CHECK(eig::adjoint_A(basis, yd) == Vec{4.0, -2.0, 0.5});
  }
  SUBCASE("zero Y gives the zero vector") {
    CHECK(eig::adjoint_A(mats, SymMatrix(m)) == Vec(n, 0.0));
  }
}

TEST_CASE("matrix softmax weights") {
  testutil::Rng rng(80);
  const SymMatrix a = random_sym(rng, 8);
  const auto d = eig::jacobi_eig(a);
  for (double eta : {1e-3, 0.1, 1.0, 50.0}) {
    const Vec w = eig::softmax_weights(d.eigenvalues, eta);
    double s = 0.0;
    for (double v : w) {
      CHECK(v >= 0.0);
      s += v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    const SymMatrix y = eig::softmax_psd(d, eta);
    CHECK(y.trace() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("spectral norm matches jacobi") {
  testutil::Rng rng(81);
  for (std::size_t m : {3, 10, 25}) {
    const SymMatrix a = random_sym(rng, m);
    const auto d = eig::jacobi_eig(a);
    double lmax = 0.0;
    for (double v : d.eigenvalues) lmax = std::max(lmax, std::fabs(v));
    CHECK(eig::spectral_norm(a) == doctest::Approx(lmax).epsilon(1e-6));
  }
}

TEST_CASE("asymmetric input is rejected") {
  Vec bad{0.0, 1.0, 2.0, 0.0};  // a01 != a10 beyond tolerance
  CHECK_THROWS(SymMatrix::from_dense(2, bad));
  Vec ok{0.0, 1.0, 1.0 + 1e-14, 0.0};
  CHECK_NOTHROW(SymMatrix::from_dense(2, ok));
}
