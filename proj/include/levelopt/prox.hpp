// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include "levelopt/feasible_set.hpp"
#include "levelopt/vec.hpp"

namespace levelopt {

enum class NormTag { euclidean, l1 };

/// Distance-generating function omega, strongly convex with modulus sigma
/// with respect to the tagged norm. Two setups ship: omega = ||x||^2/2
/// (Euclidean norm) and the entropy omega = sum x_i log x_i on the simplex
/// (l1 norm). Entropy gradients clamp coordinates below 1e-16 before the log;
/// the prox steps only ever need the gradient at interior iterates.
class ProxSetup {
 public:
  enum class Kind { euclidean, entropy };

  static ProxSetup euclidean();
  static ProxSetup entropy();

  Kind kind() const { return kind_; }
  double sigma() const { return 1.0; }
  NormTag norm_tag() const {
    return kind_ == Kind::euclidean ? NormTag::euclidean : NormTag::l1;
  }

  double omega(const Vec& x) const;
  Vec omega_grad(const Vec& x) const;

  /// Bregman distance d(x) = omega(x) - omega(anchor) - <omega'(anchor), x - anchor>.
  double bregman(const Vec& x, const Vec& anchor) const;
  /// Gradient of the Bregman distance: omega'(x) - omega'(anchor).
  Vec bregman_grad(const Vec& x, const Vec& anchor) const;

 private:
  explicit ProxSetup(Kind k) : kind_(k) {}
  Kind kind_;
};

/// Squared prox-size D^2 of the set and the derived capacity 2 D^2 / sigma.
struct ProxSize {
  double d_sq = 0.0;
  double capacity = 0.0;
};

/// Closed-form prox-size for the shipped (omega, set) pairs: Euclidean on a
/// box or simplex, entropy on the simplex (anchored at the omega-minimizer,
/// where the value is ln m). Throws on unsupported combinations.
ProxSize prox_size_omega(const ProxSetup& prox, const FeasibleSet& set);

}  // namespace levelopt
