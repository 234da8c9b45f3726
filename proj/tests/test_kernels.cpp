// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "levelopt/kernels.hpp"
#include "test_util.hpp"

using namespace levelopt;

namespace {

// Sizes chosen to cover the vector width remainders.
const std::size_t kSizes[] = {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 31, 100, 1003};

}  // namespace

#if defined(__x86_64__)

TEST_CASE("scalar and avx2 lanes agree") {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
    MESSAGE("no AVX2 on this host; equivalence covered by the scalar lane");
    return;
  }
  testutil::Rng rng(42);
  for (std::size_t n : kSizes) {
    Vec a = rng.vec_uniform(n, -2.0, 2.0);
    Vec b = rng.vec_uniform(n, -2.0, 2.0);
    Vec lo = rng.vec_uniform(n, -1.0, 0.0);
    Vec hi = rng.vec_uniform(n, 0.0, 1.0);

    const double scale = static_cast<double>(n);
    CHECK(kern::avx2::dot(a.data(), b.data(), n) ==
          doctest::Approx(kern::scalar::dot(a.data(), b.data(), n))
              .epsilon(1e-13 * scale));
    CHECK(kern::avx2::sum(a.data(), n) ==
          doctest::Approx(kern::scalar::sum(a.data(), n)).epsilon(1e-13 * scale));
    CHECK(kern::avx2::nrm2sq(a.data(), n) ==
          doctest::Approx(kern::scalar::nrm2sq(a.data(), n)).epsilon(1e-13 * scale));
    // max and clamp are order-free: exact agreement required.
    CHECK(kern::avx2::max_val(a.data(), n) == kern::scalar::max_val(a.data(), n));
    Vec out_s(n), out_v(n);
    kern::scalar::clamp(a.data(), lo.data(), hi.data(), out_s.data(), n);
    kern::avx2::clamp(a.data(), lo.data(), hi.data(), out_v.data(), n);
    CHECK(std::memcmp(out_s.data(), out_v.data(), n * sizeof(double)) == 0);

    Vec ys = b, yv = b;
    kern::scalar::axpy(0.77, a.data(), ys.data(), n);
    kern::avx2::axpy(0.77, a.data(), yv.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(yv[i] == doctest::Approx(ys[i]).epsilon(1e-14));

    Vec xs = a, xv = a;
    kern::scalar::scal(-1.3, xs.data(), n);
    kern::avx2::scal(-1.3, xv.data(), n);
    CHECK(std::memcmp(xs.data(), xv.data(), n * sizeof(double)) == 0);

    Vec rx_s = a, ry_s = b, rx_v = a, ry_v = b;
    const double c = 0.8, s = 0.6;
    kern::scalar::rot(rx_s.data(), ry_s.data(), c, s, n);
    kern::avx2::rot(rx_v.data(), ry_v.data(), c, s, n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(rx_v[i] == doctest::Approx(rx_s[i]).epsilon(1e-14));
      CHECK(ry_v[i] == doctest::Approx(ry_s[i]).epsilon(1e-14));
    }
  }
}

#endif  // __x86_64__

TEST_CASE("dispatched kernels match the scalar reference") {
  testutil::Rng rng(7);
  for (std::size_t n : kSizes) {
    Vec a = rng.vec_uniform(n, -3.0, 3.0);
    Vec b = rng.vec_uniform(n, -3.0, 3.0);
    CHECK(kern::dot(a.data(), b.data(), n) ==
          doctest::Approx(kern::scalar::dot(a.data(), b.data(), n))
              .epsilon(1e-13 * static_cast<double>(n)));
    CHECK(kern::max_val(a.data(), n) == kern::scalar::max_val(a.data(), n));
  }
  MESSAGE("active lane: ", kern::active_lane());
}

TEST_CASE("rot preserves norms") {
  testutil::Rng rng(3);
  Vec x = rng.vec_uniform(33, -1.0, 1.0);
  Vec y = rng.vec_uniform(33, -1.0, 1.0);
  const double before = kern::nrm2sq(x.data(), 33) + kern::nrm2sq(y.data(), 33);
  const double theta = 0.3;
  kern::rot(x.data(), y.data(), std::cos(theta), std::sin(theta), 33);
  const double after = kern::nrm2sq(x.data(), 33) + kern::nrm2sq(y.data(), 33);
  CHECK(after == doctest::Approx(before).epsilon(1e-13));
}
