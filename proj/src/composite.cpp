// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/composite.hpp"

#include <stdexcept>

namespace levelopt {

double PsiTemplate::value(const Vec& phi, const Vec& x) const {
  if (phi.size() != m) throw std::invalid_argument("Psi: wrong component count");
  switch (kind) {
    case Kind::identity:
      return phi[0];
    case Kind::max_of_m:
      return kern::max_val(phi.data(), phi.size());
    case Kind::sum_of_two:
      return phi[0] + phi[1];
    case Kind::linear_plus_l1:
      return phi[0] + l1_weight * norm1(x);
  }
  return 0.0;
}

GenCut support_cut(const Vec& z, const InnerEval& at_z, const PsiTemplate& psi) {
  if (at_z.values.size() != psi.m || at_z.slopes.size() != psi.m)
    throw std::invalid_argument("support_cut: component count mismatch");
  GenCut cut;
  cut.anchor = z;
  switch (psi.kind) {
    case PsiTemplate::Kind::identity:
      cut.pieces.push_back({at_z.values[0], at_z.slopes[0]});
      break;
    case PsiTemplate::Kind::max_of_m:
      for (std::size_t i = 0; i < psi.m; ++i)
        cut.pieces.push_back({at_z.values[i], at_z.slopes[i]});
      break;
    case PsiTemplate::Kind::sum_of_two: {
      // Sum of two linearizations is one affine piece.
      GenCut::Piece p;
      p.value = at_z.values[0] + at_z.values[1];
      p.slope = at_z.slopes[0];
      add_scaled(p.slope, 1.0, at_z.slopes[1]);
      cut.pieces.push_back(std::move(p));
      break;
    }
    case PsiTemplate::Kind::linear_plus_l1:
      cut.pieces.push_back({at_z.values[0], at_z.slopes[0]});
      cut.l1_weight = psi.l1_weight;
      break;
  }
  return cut;
}

namespace {

class CompositeLevelOracle final : public LevelOracle {
 public:
  CompositeLevelOracle(const InnerOracle& inner, const PsiTemplate& psi)
      : inner_(inner), psi_(psi) {}

  UpperEval upper_at(const Vec& x) override {
    const InnerEval e = inner_(x);
    const double f = psi_.value(e.values, x);
    return UpperEval{f, f};
  }

  GenCut cut_at(const Vec& x) override {
    return support_cut(x, inner_(x), psi_);
  }

 private:
  const InnerOracle& inner_;
  const PsiTemplate& psi_;
};

}  // namespace

SolveResult apl_composite_solve(const Vec& p0, const AplConfig& cfg,
                                const ProxSetup& prox, const FeasibleSet& domain,
                                const InnerOracle& inner,
                                const PsiTemplate& psi) {
  CompositeLevelOracle adapter(inner, psi);
  return detail::level_solve(adapter, p0, cfg, prox, domain);
}

LevelGapResult apl_composite_gap(const Vec& p, double lb, const AplConfig& cfg,
                                 const ProxSetup& prox, const FeasibleSet& domain,
                                 const InnerOracle& inner,
                                 const PsiTemplate& psi, TraceSink& sink) {
  CompositeLevelOracle adapter(inner, psi);
  const UpperEval at_p = adapter.upper_at(p);
  ++sink.oracle_calls;
  return level_gap(adapter, domain, prox, p, at_p, lb, detail::params_of(cfg),
                   sink);
}

}  // namespace levelopt
