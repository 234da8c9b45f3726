// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>

namespace levelopt::kern {

// Hot arithmetic shared by the solvers and the eigensolver. The `scalar`
// namespace holds the reference implementations; an AVX2 lane is selected
// once at runtime when the CPU supports it. Set LEVELOPT_SIMD=scalar (or
// =avx2) in the environment to force a lane.

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
double max_val(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void clamp(const double* x, const double* lo, const double* hi, double* out,
           std::size_t n);
// Plane rotation: (x, y) <- (c*x + s*y, c*y - s*x), applied elementwise.
void rot(double* x, double* y, double c, double s, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
double max_val(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void clamp(const double* x, const double* lo, const double* hi, double* out,
           std::size_t n);
void rot(double* x, double* y, double c, double s, std::size_t n);
}  // namespace avx2
#endif

// Dispatched entry points. Resolution happens on first use and is stable
// for the lifetime of the process.
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
double max_val(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void clamp(const double* x, const double* lo, const double* hi, double* out,
           std::size_t n);
void rot(double* x, double* y, double c, double s, std::size_t n);

/// Name of the lane in use: "avx2" or "scalar".
const char* active_lane();

}  // namespace levelopt::kern
