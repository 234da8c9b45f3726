// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace levelopt::kern {

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*nrm2sq)(const double*, std::size_t);
  double (*max_val)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  void (*clamp)(const double*, const double*, const double*, double*, std::size_t);
  void (*rot)(double*, double*, double, double, std::size_t);
  const char* name;
};

constexpr Table kScalar = {scalar::dot,  scalar::sum,  scalar::nrm2sq,
                           scalar::max_val, scalar::axpy, scalar::scal,
                           scalar::clamp, scalar::rot, "scalar"};

#if defined(LEVELOPT_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
constexpr Table kAvx2 = {avx2::dot,  avx2::sum,  avx2::nrm2sq,
                         avx2::max_val, avx2::axpy, avx2::scal,
                         avx2::clamp, avx2::rot, "avx2"};
#endif

Table resolve() {
  const char* force = std::getenv("LEVELOPT_SIMD");
  if (force && std::strcmp(force, "scalar") == 0) return kScalar;
#if defined(LEVELOPT_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return kAvx2;
#endif
  return kScalar;
}

const Table& table() {
  static const Table t = resolve();
  return t;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  return table().dot(a, b, n);
}
double sum(const double* a, std::size_t n) { return table().sum(a, n); }
double nrm2sq(const double* a, std::size_t n) { return table().nrm2sq(a, n); }
double max_val(const double* a, std::size_t n) { return table().max_val(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  table().axpy(alpha, x, y, n);
}
void scal(double alpha, double* x, std::size_t n) { table().scal(alpha, x, n); }
void clamp(const double* x, const double* lo, const double* hi, double* out,
           std::size_t n) {
  table().clamp(x, lo, hi, out, n);
}
void rot(double* x, double* y, double c, double s, std::size_t n) {
  table().rot(x, y, c, s, n);
}
const char* active_lane() { return table().name; }

}  // namespace levelopt::kern
