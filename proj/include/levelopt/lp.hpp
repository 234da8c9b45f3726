// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstddef>
#include <vector>

#include "levelopt/vec.hpp"

namespace levelopt::lp {

/// min <c, x> + c0  subject to  row constraints and lo <= x <= up.
/// Lower bounds must be finite; upper bounds may be +inf.
struct Problem {
  std::size_t nvars = 0;
  Vec c;
  double c0 = 0.0;
  Vec lo, up;
  struct Row {
    Vec a;
    double b = 0.0;
    bool equality = false;  // default: <=
  };
  std::vector<Row> rows;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct Solution {
  LpStatus status = LpStatus::optimal;
  Vec x;
  double value = 0.0;
  /// One multiplier per row; >= 0 for inequality rows, free for equalities.
  Vec row_duals;
  std::size_t pivots = 0;
};

/// Dense bounded-variable simplex (phase 1 / phase 2, Bland fallback under
/// degeneracy). Intended for the small subproblems that arise here: tens of
/// rows, a few hundred columns.
Solution solve(const Problem& p);

}  // namespace levelopt::lp
