// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#include "levelopt/localizer.hpp"

#include <stdexcept>

namespace levelopt {

double GenCut::eval(const Vec& x) const {
  double best = -1e308;
  for (const Piece& p : pieces) {
    double v = p.value;
    for (std::size_t i = 0; i < p.slope.size(); ++i)
      v += p.slope[i] * (x[i] - anchor[i]);
    if (v > best) best = v;
  }
  if (l1_weight != 0.0) best += l1_weight * norm1(x);
  return best;
}

GenCut GenCut::from(const Cut& c) {
  GenCut g;
  g.anchor = c.anchor;
  g.pieces.push_back({c.value, c.slope});
  return g;
}

GenCut GenCut::from(const Vec& anchor, const OracleEval& e) {
  GenCut g;
  g.anchor = anchor;
  g.pieces.push_back({e.value, e.subgrad});
  return g;
}

std::vector<LocalizerSet::Row> rows_of(const GenCut& cut, double level) {
  std::vector<LocalizerSet::Row> rows;
  rows.reserve(cut.pieces.size());
  for (const GenCut::Piece& p : cut.pieces) {
    // value + <slope, x - anchor> + w||x||_1 <= level
    LocalizerSet::Row r;
    r.a = p.slope;
    r.b = level - p.value + dot(p.slope, cut.anchor);
    r.l1w = cut.l1_weight;
    rows.push_back(std::move(r));
  }
  return rows;
}

LocalizerSet::LocalizerSet(FeasibleSet base, std::size_t bundle_limit)
    : base_(std::move(base)), limit_(bundle_limit) {
  if (limit_ < 1) throw std::invalid_argument("LocalizerSet: bundle limit >= 1");
}

void LocalizerSet::push_block(const GenCut& cut, double level) {
  blocks_.push_back(rows_of(cut, level));
  while (blocks_.size() > limit_) blocks_.pop_front();
  rebuild_rows();
}

void LocalizerSet::set_center_halfspace(const Vec& g, const Vec& center) {
  // <g, x - center> >= 0  <=>  <-g, x> <= -<g, center>
  Halfspace h;
  h.a.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) h.a[i] = -g[i];
  h.b = -dot(g, center);
  center_ = std::move(h);
  rebuild_rows();
}

void LocalizerSet::rebuild_rows() {
  rows_.clear();
  if (center_) rows_.push_back(Row{center_->a, center_->b, 0.0});
  for (const auto& blk : blocks_)
    for (const Row& r : blk) rows_.push_back(r);
}

bool LocalizerSet::contains(const Vec& x, double tol) const {
  if (!base_.contains(x, tol)) return false;
  const double x1 = norm1(x);
  for (const Row& r : rows_)
    if (dot(r.a, x) + r.l1w * x1 > r.b + tol) return false;
  return true;
}

}  // namespace levelopt
