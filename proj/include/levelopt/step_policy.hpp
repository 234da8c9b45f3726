// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>

namespace levelopt {

enum class StepKind { polynomial, recursive };

/// Step-size schedule alpha_k in (0,1] together with the accumulated damping
/// gamma_k (gamma_1 = 1, gamma_k = (1 - lambda*alpha_k) gamma_{k-1}).
///
/// polynomial: alpha_k = 2/(k+1) at lambda = 1 (gamma_k = 2/(k(k+1))), and
/// alpha_k = 2/(lambda (k+2)) for lambda in (2/3, 1) (gamma_k =
/// 6/((k+1)(k+2))). recursive: alpha_1 = gamma_1 = 1 and gamma_k = alpha_k^2
/// = (1 - lambda*alpha_k) gamma_{k-1}, solved via the positive quadratic
/// root. The object is stateful so the recursive gamma needs no
/// recomputation; call reset() at the start of each gap-reduction call.
class StepPolicy {
 public:
  static StepPolicy polynomial(double lambda);
  static StepPolicy recursive(double lambda);

  StepKind kind() const { return kind_; }
  double lambda() const { return lambda_; }

  void reset();

  /// alpha_k for k = 1, 2, ...; the recursive kind requires sequential k.
  double alpha(std::size_t k);

  /// gamma_k after the latest alpha() call.
  double gamma() const { return gamma_; }

 private:
  StepPolicy(StepKind k, double lambda);
  StepKind kind_;
  double lambda_;
  double gamma_ = 1.0;
  std::size_t last_k_ = 0;
};

/// Operation-style wrapper over StepPolicy::alpha.
inline double step_alpha(StepPolicy& policy, std::size_t k) {
  return policy.alpha(k);
}

}  // namespace levelopt
