#include "lbx/geo_reductions.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace lbx {

Rect2D edge_to_rectangle(const ButterflyShape& shape, const EdgeRef& e) {
  validate_edge(shape, e);
  const std::uint32_t d = shape.depth();
  const std::uint32_t b = shape.degree();

  // Reached sinks: (tail_0..tail_{j-1}, z, *, ..., *). Coordinate 0 is the
  // most significant sink digit, so the free suffix is a contiguous block.
  Digits sink_lo(d, 0);
  for (std::uint32_t i = 0; i < e.level; ++i) sink_lo[i] = e.tail[i];
  sink_lo[e.level] = e.z;
  const auto x_lo = static_cast<Coord>(sink_index(shape, sink_lo));
  const auto x_len = static_cast<Coord>(ipow(b, d - 1 - e.level));

  // Reaching sources: (*, ..., *, tail_j..tail_{d-1}); coordinate 0 is the
  // least significant source digit.
  Digits source_lo(d, 0);
  for (std::uint32_t i = e.level; i < d; ++i) source_lo[i] = e.tail[i];
  const auto y_lo = static_cast<Coord>(source_index(shape, source_lo));
  const auto y_len = static_cast<Coord>(ipow(b, e.level));

  return Rect2D(x_lo, x_lo + x_len - 1, y_lo, y_lo + y_len - 1);
}

StabbingInstance build_stabbing_instance(const Subgraph& sub) {
  StabbingInstance out;
  out.rects.reserve(sub.missing().size());
  out.provenance.reserve(sub.missing().size());
  for (const EdgeRef& e : sub.missing()) {
    out.rects.push_back(edge_to_rectangle(sub.shape(), e));
    out.provenance.push_back(e);
  }
  return out;
}

Point2D pair_to_point(const ButterflyShape& shape, const Digits& source, const Digits& sink) {
  return Point2D{static_cast<Coord>(sink_index(shape, sink)), static_cast<Coord>(source_index(shape, source))};
}

WeightedPointSet stabbing_to_counting(std::span<const Rect2D> rects) {
  constexpr Coord kMax = std::numeric_limits<Coord>::max();
  WeightedPointSet out;
  out.reserve(rects.size() * 4);
  for (const Rect2D& r : rects) {
    require(r.x_hi < kMax && r.y_hi < kMax, "stabbing_to_counting: rectangle touches the grid limit");
    out.push_back({r.x_lo, r.y_lo, +1});
    out.push_back({r.x_lo, r.y_hi + 1, -1});
    out.push_back({r.x_hi + 1, r.y_lo, -1});
    out.push_back({r.x_hi + 1, r.y_hi + 1, +1});
  }
  return out;
}

Box4D Reporting4DInstance::query_box(Point2D q) {
  constexpr Coord kMin = std::numeric_limits<Coord>::min();
  constexpr Coord kMax = std::numeric_limits<Coord>::max();
  Box4D box;
  box.lo = {kMin, q.x, kMin, q.y};
  box.hi = {q.x, kMax, q.y, kMax};
  return box;
}

Reporting4DInstance stabbing_to_reporting4d(std::span<const Rect2D> rects) {
  Reporting4DInstance out;
  out.points.reserve(rects.size());
  for (const Rect2D& r : rects) out.points.push_back({r.x_lo, r.x_hi, r.y_lo, r.y_hi});
  return out;
}

Interval subtree_leaf_interval(const MarkedTree& tree, const Digits& node) {
  tree.validate_node(node);
  std::uint64_t prefix = 0;
  for (std::uint32_t digit : node) prefix = prefix * tree.degree() + digit;
  const std::uint64_t span = ipow(tree.degree(), tree.depth() - static_cast<std::uint32_t>(node.size()));
  const auto lo = static_cast<Coord>(prefix * span);
  return Interval{lo, lo + static_cast<Coord>(span) - 1};
}

std::vector<IntervalOp> ma_to_stabbing1d(std::uint32_t degree, std::uint32_t depth, std::span<const MarkOp> ops) {
  // The tree tracks mark state so an invalid unmark is caught at its position.
  MarkedTree tree(degree, depth);
  std::vector<IntervalOp> out;
  out.reserve(ops.size());
  for (const MarkOp& op : ops) {
    if (op.kind == MarkOpKind::Mark) {
      require(!tree.is_marked(op.node), "ma_to_stabbing1d: node already marked");
      tree.mark(op.node);
    } else {
      tree.unmark(op.node);
    }
    out.push_back(IntervalOp{op.kind, subtree_leaf_interval(tree, op.node)});
  }
  return out;
}

void IntervalMultiset::apply(const IntervalOp& op) {
  if (op.kind == MarkOpKind::Mark) {
    intervals_.push_back(op.interval);
    return;
  }
  auto it = std::find(intervals_.begin(), intervals_.end(), op.interval);
  require(it != intervals_.end(), "IntervalMultiset: delete of an absent interval");
  intervals_.erase(it);
}

namespace {

template <typename Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    std::istringstream fields(line);
    fn(fields, line);
  }
}

}  // namespace

void write_rects(std::ostream& out, std::span<const Rect2D> rects) {
  for (const Rect2D& r : rects) out << r.x_lo << ' ' << r.x_hi << ' ' << r.y_lo << ' ' << r.y_hi << '\n';
}

RectSet read_rects(std::istream& in) {
  RectSet out;
  for_each_data_line(in, [&](std::istringstream& fields, const std::string& line) {
    Coord a1, b1, a2, b2;
    require(static_cast<bool>(fields >> a1 >> b1 >> a2 >> b2), "bad rectangle line: " + line);
    out.emplace_back(a1, b1, a2, b2);
  });
  return out;
}

void write_weighted_points(std::ostream& out, std::span<const WeightedPoint2D> points) {
  for (const WeightedPoint2D& p : points) out << p.x << ' ' << p.y << ' ' << p.weight << '\n';
}

WeightedPointSet read_weighted_points(std::istream& in) {
  WeightedPointSet out;
  for_each_data_line(in, [&](std::istringstream& fields, const std::string& line) {
    WeightedPoint2D p;
    require(static_cast<bool>(fields >> p.x >> p.y >> p.weight), "bad weighted point line: " + line);
    out.push_back(p);
  });
  return out;
}

}  // namespace lbx
