// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/bounds.hpp"

#include <cmath>

namespace levelopt::bounds {

double abl_c1(StepKind kind, double lambda) {
  return kind == StepKind::polynomial ? 6.0 : 4.0 / (lambda * lambda);
}

double abl_c2(StepKind kind, double lambda, double rho) {
  const double three = std::pow(3.0, (1.0 - rho) / 2.0);
  if (kind == StepKind::polynomial)
    return std::pow(2.0, 3.0 - rho) / three * std::pow(lambda, -(1.0 + rho));
  return 4.0 / three * std::pow(lambda, -(1.0 + 3.0 * rho) / 2.0);
}

double abl_alpha1(StepKind kind, double lambda) {
  return kind == StepKind::polynomial ? 2.0 / (3.0 * lambda) : 1.0;
}

double apl_c(StepKind kind, double rho) {
  const double three = std::pow(3.0, (1.0 - rho) / 2.0);
  if (kind == StepKind::polynomial) return std::pow(2.0, 1.0 + rho) / three;
  return 4.0 / three;
}

double k_abl(double delta0, double lambda, StepKind kind, double M, double rho,
             double DX) {
  const double c1 = abl_c1(kind, lambda);
  const double c2 = abl_c2(kind, lambda, rho);
  const double a1 = abl_alpha1(kind, lambda);
  const double head = std::sqrt(2.0 * c1 * (1.0 - lambda * a1) / lambda);
  const double tail = std::pow(
      2.0 * c2 * M * std::pow(DX, 1.0 + rho) / ((1.0 + rho) * delta0),
      2.0 / (1.0 + 3.0 * rho));
  return std::ceil(head + tail);
}

double k_apl(double delta0, double beta, double theta, StepKind kind, double M,
             double rho, double omega_cap) {
  const double c = apl_c(kind, rho);
  const double num = c * M * std::pow(omega_cap, (1.0 + rho) / 2.0);
  return std::ceil(
      std::pow(num / (beta * theta * (1.0 + rho) * delta0), 2.0 / (1.0 + 3.0 * rho)));
}

double k_usl(double delta0, double d_tilde, double beta, double theta,
             StepKind kind, double opnorm, double d2_omega, double sigma_omega,
             double sigma_v) {
  const double c = apl_c(kind, 1.0);
  return std::ceil(2.0 * opnorm / (beta * theta * delta0) *
                   std::sqrt(c * d2_omega * d_tilde / (sigma_omega * sigma_v)));
}

double abl_phases(double eps, double lambda, double M, double rho, double DX) {
  const double arg = M * std::pow(DX, 1.0 + rho) / ((1.0 + rho) * eps);
  if (arg <= 1.0) return 0.0;
  return std::ceil(std::log(arg) / std::log(1.0 / lambda));
}

double initial_saddle_gap(double opnorm, double d2x, double d2y, double sx,
                          double sv) {
  return opnorm * std::sqrt(d2x * d2y / (sx * sv));
}

}  // namespace levelopt::bounds
