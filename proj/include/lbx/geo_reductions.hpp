#pragma once

#include <iosfwd>
#include <vector>

#include "lbx/butterfly.hpp"
#include "lbx/problems.hpp"

namespace lbx {

/// Rectangles produced from a butterfly subgraph, one per missing edge.
/// The x axis carries sink indices and the y axis source indices.
struct StabbingInstance {
  RectSet rects;
  std::vector<EdgeRef> provenance;  // provenance[i] produced rects[i]
};

/// Cut set of an edge as a rectangle: the pairs (sink, source) whose unique
/// path uses `e`. Area is always b^(d-1).
Rect2D edge_to_rectangle(const ButterflyShape& shape, const EdgeRef& e);

StabbingInstance build_stabbing_instance(const Subgraph& sub);

/// (sink_index(sink), source_index(source)).
Point2D pair_to_point(const ButterflyShape& shape, const Digits& source, const Digits& sink);

/// Corner trick: +1 at (a1, a2) and (b1+1, b2+1), -1 at (a1, b2+1) and
/// (b1+1, a2). Dominance sums then count stabbed rectangles exactly.
WeightedPointSet stabbing_to_counting(std::span<const Rect2D> rects);

struct Reporting4DInstance {
  std::vector<Point4D> points;  // rectangle [a1,b1]x[a2,b2] -> (a1, b1, a2, b2)

  /// (-inf, q.x] x [q.x, +inf) x (-inf, q.y] x [q.y, +inf)
  static Box4D query_box(Point2D q);
};

Reporting4DInstance stabbing_to_reporting4d(std::span<const Rect2D> rects);

// Marked ancestor to dynamic 1D stabbing.

struct IntervalOp {
  MarkOpKind kind = MarkOpKind::Mark;  // Mark inserts, Unmark deletes
  Interval interval;
};

/// Leaves under `node`, as a closed interval of leaf indices.
Interval subtree_leaf_interval(const MarkedTree& tree, const Digits& node);

/// Translates a mark/unmark script. Unmarking a node that is not marked at
/// that point of the script is rejected.
std::vector<IntervalOp> ma_to_stabbing1d(std::uint32_t degree, std::uint32_t depth, std::span<const MarkOp> ops);

/// Live interval multiset after replaying interval ops.
class IntervalMultiset {
 public:
  void apply(const IntervalOp& op);
  const std::vector<Interval>& intervals() const { return intervals_; }

 private:
  std::vector<Interval> intervals_;
};

// Rect file: one "a1 b1 a2 b2" per line. Weighted points: "x y w".
void write_rects(std::ostream& out, std::span<const Rect2D> rects);
RectSet read_rects(std::istream& in);
void write_weighted_points(std::ostream& out, std::span<const WeightedPoint2D> points);
WeightedPointSet read_weighted_points(std::istream& in);

}  // namespace lbx
