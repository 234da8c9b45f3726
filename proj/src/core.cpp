// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include <stdexcept>

#include "levelopt/types.hpp"

namespace levelopt {

double eval_bundle(const std::vector<Cut>& cuts, const Vec& x) {
  if (cuts.empty()) throw std::invalid_argument("eval_bundle: no cuts");
  double best = -1e308;
  for (const Cut& c : cuts) {
    if (c.slope.size() != x.size())
      throw std::invalid_argument("eval_bundle: dimension mismatch");
    const double v = c.eval(x);
    if (v > best) best = v;
  }
  return best;
}

}  // namespace levelopt
