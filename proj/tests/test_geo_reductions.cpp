#include <doctest.h>

#include <algorithm>
#include <limits>
#include <sstream>

#include "lbx/generators.hpp"
#include "lbx/geo_reductions.hpp"

using namespace lbx;

namespace {

// Bounding box of the (sink, source) points whose path uses e, by enumeration.
Rect2D cut_box(const ButterflyShape& shape, const EdgeRef& e, std::uint64_t& cells) {
  Coord x_lo = std::numeric_limits<Coord>::max(), x_hi = -1, y_lo = x_lo, y_hi = -1;
  cells = 0;
  for (std::uint64_t s = 0; s < shape.width(); ++s) {
    const Digits source = source_from_index(shape, s);
    for (std::uint64_t t = 0; t < shape.width(); ++t) {
      const Digits sink = source_from_index(shape, t);
      const auto path = path_edges(shape, source, sink);
      if (std::find(path.begin(), path.end(), e) == path.end()) continue;
      ++cells;
      const Point2D p = pair_to_point(shape, source, sink);
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
  }
  return Rect2D(x_lo, x_hi, y_lo, y_hi);
}

bool properly_overlap(const Rect2D& a, const Rect2D& b) {
  const bool intersect = a.x_lo <= b.x_hi && b.x_lo <= a.x_hi && a.y_lo <= b.y_hi && b.y_lo <= a.y_hi;
  return intersect && !(a == b);
}

}  // namespace

TEST_CASE("edge_to_rectangle examples") {
  const ButterflyShape two(2, 2);
  // Level-0 edge: sinks (1,*) give x in [2,3]; the only source is (0,1), y = 2.
  CHECK(edge_to_rectangle(two, EdgeRef{0, {0, 1}, 1}) == Rect2D(2, 3, 2, 2));
  const ButterflyShape one(2, 1);
  CHECK(edge_to_rectangle(one, EdgeRef{0, {0}, 1}) == Rect2D(1, 1, 0, 0));
  CHECK_THROWS_AS(edge_to_rectangle(two, EdgeRef{2, {0, 0}, 0}), InvalidInput);
}

TEST_CASE("edge_to_rectangle equals the enumerated cut set") {
  for (auto [b, d] : {std::pair{2U, 1U}, {2U, 2U}, {2U, 3U}, {3U, 2U}, {3U, 3U}}) {
    const ButterflyShape shape(b, d);
    for (const EdgeRef& e : all_edges(shape)) {
      std::uint64_t cells = 0;
      const Rect2D box = cut_box(shape, e, cells);
      const Rect2D rect = edge_to_rectangle(shape, e);
      CHECK(rect == box);
      // Contiguous: the bounding box is filled exactly.
      CHECK(static_cast<std::uint64_t>(rect.area()) == cells);
      CHECK(rect.area() == static_cast<Coord>(ipow(b, d - 1)));
    }
  }
}

TEST_CASE("build_stabbing_instance") {
  const ButterflyShape shape(2, 2);
  CHECK(build_stabbing_instance(Subgraph(shape)).rects.empty());
  Subgraph one(shape);
  one.remove_edge(EdgeRef{1, {1, 0}, 0});
  const auto inst = build_stabbing_instance(one);
  REQUIRE(inst.rects.size() == 1);
  REQUIRE(inst.provenance.size() == 1);
  CHECK(inst.provenance[0] == EdgeRef{1, {1, 0}, 0});
  CHECK(inst.rects[0] == Rect2D(2, 2, 0, 1));
}

TEST_CASE("pair_to_point") {
  const ButterflyShape shape(2, 2);
  CHECK(pair_to_point(shape, {0, 0}, {0, 0}) == Point2D{0, 0});
  CHECK(pair_to_point(shape, {1, 0}, {0, 1}) == Point2D{1, 1});
  std::set<Point2D> points;
  for (std::uint64_t s = 0; s < 4; ++s) {
    for (std::uint64_t t = 0; t < 4; ++t) points.insert(pair_to_point(shape, source_from_index(shape, s), source_from_index(shape, t)));
  }
  CHECK(points.size() == 16);
  CHECK(points.begin()->x == 0);
  CHECK(points.rbegin()->x == 3);
}

TEST_CASE("stabbing equals unreachability on sampled subgraphs") {
  for (auto [b, d] : {std::pair{2U, 3U}, {3U, 2U}, {2U, 4U}}) {
    const ButterflyShape shape(b, d);
    std::uint64_t failures = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      Rng rng = Rng::stream(17, trial);
      const Subgraph sub = random_subgraph(shape, rng, static_cast<unsigned>(rng.below(300)));
      const auto inst = build_stabbing_instance(sub);
      CHECK(inst.rects.size() == sub.missing().size());
      for (std::uint64_t s = 0; s < shape.width(); ++s) {
        const Digits source = source_from_index(shape, s);
        for (std::uint64_t t = 0; t < shape.width(); ++t) {
          const Digits sink = sink_from_index(shape, t);
          const bool stabbed = stab2d(inst.rects, pair_to_point(shape, source, sink)).stabbed;
          if (stabbed == reachable(sub, source, sink)) ++failures;
        }
      }
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("same-level rectangles are disjoint; some cross-level ones overlap") {
  const ButterflyShape shape(2, 3);
  const auto edges = all_edges(shape);
  bool overlap_seen = false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Rect2D a = edge_to_rectangle(shape, edges[i]);
      const Rect2D b = edge_to_rectangle(shape, edges[j]);
      if (edges[i].level == edges[j].level) {
        CHECK_FALSE(properly_overlap(a, b));
      } else if (properly_overlap(a, b)) {
        overlap_seen = true;
      }
    }
  }
  CHECK(overlap_seen);
}

TEST_CASE("corner trick") {
  const RectSet one{Rect2D(0, 3, 0, 3)};
  const auto points = stabbing_to_counting(one);
  REQUIRE(points.size() == 4);
  CHECK(dominance_count2d(points, {2, 2}) == 1);
  CHECK(dominance_count2d(points, {5, 2}) == 0);
  CHECK(dominance_count2d(points, {5, 5}) == 0);
  const std::int64_t total = points[0].weight + points[1].weight + points[2].weight + points[3].weight;
  CHECK(total == 0);

  const Coord top = std::numeric_limits<Coord>::max();
  const RectSet edge{Rect2D(0, top, 0, 0)};
  CHECK_THROWS_AS(stabbing_to_counting(edge), InvalidInput);

  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const RectSet rects = random_rects(1 + rng.below(10), 7, rng);
    const auto weighted = stabbing_to_counting(rects);
    for (Coord x = -1; x <= 8; ++x) {
      for (Coord y = -1; y <= 8; ++y) {
        const auto count = static_cast<std::int64_t>(stab2d(rects, {x, y}).count);
        const auto got = dominance_count2d(weighted, {x, y});
        CHECK(got == count);
        CHECK((got & 1) == (count & 1));
      }
    }
  }
}

TEST_CASE("4d lift") {
  const RectSet none;
  CHECK_FALSE(report4d_nonempty(stabbing_to_reporting4d(none).points, Reporting4DInstance::query_box({1, 1})));
  const RectSet one{Rect2D(0, 3, 0, 3)};
  const auto lifted = stabbing_to_reporting4d(one);
  REQUIRE(lifted.points.size() == 1);
  CHECK(lifted.points[0] == Point4D{0, 3, 0, 3});
  const Box4D box = Reporting4DInstance::query_box({2, 2});
  CHECK(box.hi[0] == 2);
  CHECK(box.lo[1] == 2);
  CHECK(box.hi[2] == 2);
  CHECK(box.lo[3] == 2);
  CHECK(report4d_nonempty(lifted.points, box));

  const ButterflyShape shape(2, 3);
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    Rng rng = Rng::stream(23, trial);
    const auto rects = build_stabbing_instance(random_subgraph(shape, rng, 100)).rects;
    const auto l = stabbing_to_reporting4d(rects);
    for (Coord x = 0; x < 8; ++x) {
      for (Coord y = 0; y < 8; ++y) {
        CHECK(report4d_nonempty(l.points, Reporting4DInstance::query_box({x, y})) == stab2d(rects, {x, y}).stabbed);
      }
    }
  }
}

TEST_CASE("marked ancestor to 1D stabbing") {
  MarkedTree tree(2, 3);
  CHECK(subtree_leaf_interval(tree, {}) == Interval{0, 7});
  CHECK(subtree_leaf_interval(tree, {1, 0}) == Interval{4, 5});
  CHECK(subtree_leaf_interval(tree, {0, 1, 1}) == Interval{3, 3});

  const std::vector<MarkOp> root{{MarkOpKind::Mark, {}}};
  const auto ops = ma_to_stabbing1d(2, 3, root);
  REQUIRE(ops.size() == 1);
  CHECK(ops[0].interval == Interval{0, 7});

  const std::vector<MarkOp> bad_unmark{{MarkOpKind::Unmark, {0}}};
  CHECK_THROWS_AS(ma_to_stabbing1d(2, 3, bad_unmark), InvalidInput);
  const std::vector<MarkOp> double_mark{{MarkOpKind::Mark, {0}}, {MarkOpKind::Mark, {0}}};
  CHECK_THROWS_AS(ma_to_stabbing1d(2, 3, double_mark), InvalidInput);
  const std::vector<MarkOp> bad_node{{MarkOpKind::Mark, {2}}};
  CHECK_THROWS_AS(ma_to_stabbing1d(2, 3, bad_node), InvalidInput);

  IntervalMultiset set;
  CHECK_THROWS_AS(set.apply({MarkOpKind::Unmark, {0, 1}}), InvalidInput);
}

TEST_CASE("marked ancestor replay equals stabbing after every operation") {
  for (auto [b, d] : {std::pair{2U, 3U}, {3U, 2U}, {2U, 4U}}) {
    const auto leaves = all_leaves(b, d);
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
      Rng rng = Rng::stream(31, trial);
      const auto ops = random_mark_script(b, d, 100, rng);
      const auto iops = ma_to_stabbing1d(b, d, ops);
      MarkedTree tree(b, d);
      IntervalMultiset live;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (ops[i].kind == MarkOpKind::Mark) {
          tree.mark(ops[i].node);
        } else {
          tree.unmark(ops[i].node);
        }
        live.apply(iops[i]);
        CHECK(live.intervals().size() == tree.marks().size());
        for (const auto& leaf : leaves) {
          CHECK(stab1d(live.intervals(), static_cast<Coord>(leaf_index(tree, leaf))) == ma_query(tree, leaf));
        }
      }
    }
  }
}

TEST_CASE("rect and weighted point files") {
  Rng rng(2);
  const RectSet rects = random_rects(20, 9, rng);
  std::stringstream io;
  write_rects(io, rects);
  CHECK(read_rects(io) == rects);

  const auto points = stabbing_to_counting(rects);
  std::stringstream pio;
  write_weighted_points(pio, points);
  CHECK(read_weighted_points(pio) == points);

  std::istringstream bad("1 2 3\n");
  CHECK_THROWS_AS(read_rects(bad), InvalidInput);
  std::istringstream inverted("3 2 0 0\n");
  CHECK_THROWS_AS(read_rects(inverted), InvalidInput);
}
