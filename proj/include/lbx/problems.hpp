#pragma once

// Brute-force reference solvers. Every reduction in the library is checked
// against these; they are linear scans on purpose.

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lbx/common.hpp"

namespace lbx {

using Coord = std::int64_t;

struct Point2D {
  Coord x = 0;
  Coord y = 0;
  friend bool operator==(const Point2D&, const Point2D&) = default;
  friend auto operator<=>(const Point2D&, const Point2D&) = default;
};

/// Closed rectangle [x_lo, x_hi] x [y_lo, y_hi].
struct Rect2D {
  Coord x_lo = 0;
  Coord x_hi = 0;
  Coord y_lo = 0;
  Coord y_hi = 0;

  Rect2D() = default;
  Rect2D(Coord x_lo_, Coord x_hi_, Coord y_lo_, Coord y_hi_);

  bool contains(Point2D q) const { return x_lo <= q.x && q.x <= x_hi && y_lo <= q.y && q.y <= y_hi; }
  Coord area() const { return (x_hi - x_lo + 1) * (y_hi - y_lo + 1); }
  friend bool operator==(const Rect2D&, const Rect2D&) = default;
};

using RectSet = std::vector<Rect2D>;

struct WeightedPoint2D {
  Coord x = 0;
  Coord y = 0;
  std::int64_t weight = 0;
  friend bool operator==(const WeightedPoint2D&, const WeightedPoint2D&) = default;
};

using WeightedPointSet = std::vector<WeightedPoint2D>;

struct StabResult {
  bool stabbed = false;
  std::uint64_t count = 0;
};

StabResult stab2d(std::span<const Rect2D> rects, Point2D q);

/// Sum of weights of points p with p.x <= q.x and p.y <= q.y.
std::int64_t dominance_count2d(std::span<const WeightedPoint2D> points, Point2D q);

using Point4D = std::array<Coord, 4>;

/// Four closed intervals; unbounded sides use the numeric limits of Coord.
struct Box4D {
  std::array<Coord, 4> lo{};
  std::array<Coord, 4> hi{};
  bool contains(const Point4D& p) const;
};

bool report4d_nonempty(std::span<const Point4D> points, const Box4D& box);

struct Interval {
  Coord lo = 0;
  Coord hi = 0;
  bool contains(Coord q) const { return lo <= q && q <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

bool stab1d(std::span<const Interval> intervals, Coord q);

// --- partial match -------------------------------------------------------

using BitString = std::vector<bool>;

class PartialMatchDb {
 public:
  explicit PartialMatchDb(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  const std::set<BitString>& strings() const { return strings_; }
  void insert(BitString s);
  std::size_t size() const { return strings_.size(); }

 private:
  std::size_t dimension_;
  std::set<BitString> strings_;
};

enum class Symbol : std::uint8_t { Zero, One, Star };

using Pattern = std::vector<Symbol>;

/// Parses "01*" style text; '*' is the wildcard. Spaces are ignored.
Pattern parse_pattern(const std::string& text);
BitString parse_bitstring(const std::string& text);

bool partial_match(const PartialMatchDb& db, const Pattern& pattern);

/// True iff some database string s has s_i <= q_i on every coordinate.
bool dominance_match(const PartialMatchDb& db, const BitString& query);

/// Star form of a dominance query: 1 -> *, 0 -> 0. partial_match on the
/// result equals dominance_match on the query for every database.
Pattern dominance_to_pattern(const BitString& query);

// --- marked ancestor ------------------------------------------------------

/// Complete b-ary tree of depth d with a mark bit per node. Nodes are
/// addressed by their root-to-node digit path (the root is the empty path).
class MarkedTree {
 public:
  MarkedTree(std::uint32_t degree, std::uint32_t depth);

  std::uint32_t degree() const { return degree_; }
  std::uint32_t depth() const { return depth_; }

  void mark(const Digits& node);
  /// Throws InvalidInput if the node is not marked.
  void unmark(const Digits& node);
  bool is_marked(const Digits& node) const;
  const std::set<Digits>& marks() const { return marks_; }

  void validate_node(const Digits& node) const;

 private:
  std::uint32_t degree_;
  std::uint32_t depth_;
  std::set<Digits> marks_;
};

enum class MarkOpKind : std::uint8_t { Mark, Unmark };

struct MarkOp {
  MarkOpKind kind = MarkOpKind::Mark;
  Digits node;
  friend bool operator==(const MarkOp&, const MarkOp&) = default;
};

/// True iff some prefix of `leaf` (root and leaf included) is marked.
bool ma_query(const MarkedTree& tree, const Digits& leaf);

/// Leaf index of a full-depth digit path, first digit most significant.
std::uint64_t leaf_index(const MarkedTree& tree, const Digits& leaf);

// --- union-find -----------------------------------------------------------

class Dsu {
 public:
  explicit Dsu(std::size_t n);

  std::size_t find(std::size_t a);
  /// Returns false when a and b were already in one class.
  bool unite(std::size_t a, std::size_t b);
  std::size_t size() const { return parent_.size(); }

 private:
  void check(std::size_t a) const;

  std::vector<std::size_t> parent_;
  std::vector<std::uint32_t> rank_;
};

}  // namespace lbx
