// Copyright (c) 2026 levelopt contributors
// Licensed under Apache 2.0

#pragma once

#include <deque>
#include <optional>

#include "levelopt/feasible_set.hpp"
#include "levelopt/types.hpp"

namespace levelopt {

/// Halfspace <a, x> <= b.
struct Halfspace {
  Vec a;
  double b = 0.0;
};

/// Generalized under-estimator anchored at z:
///   h(x) = max_j [ value_j + <slope_j, x - z> ] + l1_weight * ||x||_1.
/// A plain cut is one piece with zero l1 weight; a max-composite cut carries
/// one piece per inner component; a regularized cut keeps the l1 term
/// unlinearized.
struct GenCut {
  struct Piece {
    double value = 0.0;
    Vec slope;
  };
  Vec anchor;
  std::vector<Piece> pieces;
  double l1_weight = 0.0;

  double eval(const Vec& x) const;
  static GenCut from(const Cut& c);
  static GenCut from(const Vec& anchor, const OracleEval& e);
};

/// The feasible set intersected with at most B retained cut constraints
/// {h_i(x) <= level_i} plus one prox-center halfspace. A cut with several
/// pieces counts as a single bundle slot; its pieces enter as simultaneous
/// halfspace rows.
class LocalizerSet {
 public:
  /// Constraint row <a, x> + l1w * ||x||_1 <= b.
  struct Row {
    Vec a;
    double b = 0.0;
    double l1w = 0.0;
  };

  LocalizerSet(FeasibleSet base, std::size_t bundle_limit);

  const FeasibleSet& base() const { return base_; }
  std::size_t bundle_limit() const { return limit_; }
  std::size_t block_count() const { return blocks_.size(); }

  /// Appends {cut <= level}; evicts the oldest block beyond the limit.
  void push_block(const GenCut& cut, double level);

  /// Replaces the prox-center halfspace {<g, x - center> >= 0}.
  void set_center_halfspace(const Vec& g, const Vec& center);
  void clear_center_halfspace() { center_.reset(); }
  const std::optional<Halfspace>& center_halfspace() const { return center_; }

  /// All constraint rows (center halfspace first, then block pieces).
  const std::vector<Row>& rows() const { return rows_; }

  /// Membership in the base set and every row, each checked to tol.
  bool contains(const Vec& x, double tol = 1e-10) const;

 private:
  void rebuild_rows();
  FeasibleSet base_;
  std::size_t limit_;
  std::deque<std::vector<Row>> blocks_;
  std::optional<Halfspace> center_;
  std::vector<Row> rows_;
};

/// Rows for {cut(x) <= level}, one per piece.
std::vector<LocalizerSet::Row> rows_of(const GenCut& cut, double level);

}  // namespace levelopt
