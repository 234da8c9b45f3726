// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include "levelopt/vec.hpp"

namespace levelopt {

/// Compact feasible set: a coordinate box or the standard unit simplex.
class FeasibleSet {
 public:
  enum class Kind { box, simplex };

  static FeasibleSet box(Vec lower, Vec upper);
  static FeasibleSet simplex(std::size_t n);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  bool is_box() const { return kind_ == Kind::box; }
  bool is_simplex() const { return kind_ == Kind::simplex; }

  /// Box bounds; only valid for box sets.
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }

  bool contains(const Vec& x, double tol = 1e-10) const;

  /// Euclidean diameter max ||x - y||_2.
  double euclidean_diameter() const;

  /// Box midpoint / uniform simplex point.
  Vec interior_point() const;

  /// min <c, x> over the set, in closed form. Writes the minimizer to *argmin
  /// when non-null.
  double min_linear(const Vec& c, Vec* argmin = nullptr) const;

 private:
  FeasibleSet() = default;
  Kind kind_ = Kind::box;
  std::size_t dim_ = 0;
  Vec lower_, upper_;
};

}  // namespace levelopt
