// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/step_policy.hpp"

#include <cmath>
#include <stdexcept>

namespace levelopt {

StepPolicy::StepPolicy(StepKind k, double lambda) : kind_(k), lambda_(lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("StepPolicy: lambda in (0, 1] required");
  if (k == StepKind::polynomial && lambda < 1.0 && lambda <= 2.0 / 3.0)
    throw std::invalid_argument("StepPolicy: polynomial kind needs lambda in (2/3, 1]");
}

StepPolicy StepPolicy::polynomial(double lambda) {
  return StepPolicy(StepKind::polynomial, lambda);
}

StepPolicy StepPolicy::recursive(double lambda) {
  return StepPolicy(StepKind::recursive, lambda);
}

void StepPolicy::reset() {
  gamma_ = 1.0;
  last_k_ = 0;
}

double StepPolicy::alpha(std::size_t k) {
  if (k < 1) throw std::invalid_argument("StepPolicy::alpha: k >= 1 required");
  const double kd = static_cast<double>(k);
  if (kind_ == StepKind::polynomial) {
    double a;
    if (lambda_ == 1.0) {
      a = 2.0 / (kd + 1.0);
      gamma_ = 2.0 / (kd * (kd + 1.0));
    } else {
      a = 2.0 / (lambda_ * (kd + 2.0));
      gamma_ = 6.0 / ((kd + 1.0) * (kd + 2.0));
    }
    last_k_ = k;
    return a;
  }
  // recursive: sequential access only.
  if (k == 1) {
    gamma_ = 1.0;
    last_k_ = 1;
    return 1.0;
  }
  if (k != last_k_ + 1)
    throw std::logic_error("StepPolicy::alpha: recursive kind needs sequential k");
  const double lg = lambda_ * gamma_;
  const double a = 0.5 * (-lg + std::sqrt(lg * lg + 4.0 * gamma_));
  gamma_ = a * a;
  last_k_ = k;
  return a;
}

}  // namespace levelopt
