#include "lbx/problems.hpp"

#include <algorithm>
#include <numeric>

namespace lbx {

Rect2D::Rect2D(Coord x_lo_, Coord x_hi_, Coord y_lo_, Coord y_hi_)
    : x_lo(x_lo_), x_hi(x_hi_), y_lo(y_lo_), y_hi(y_hi_) {
  require(x_lo <= x_hi && y_lo <= y_hi, "Rect2D: empty interval");
}

StabResult stab2d(std::span<const Rect2D> rects, Point2D q) {
  StabResult result;
  for (const Rect2D& r : rects) {
    if (r.contains(q)) ++result.count;
  }
  result.stabbed = result.count > 0;
  return result;
}

std::int64_t dominance_count2d(std::span<const WeightedPoint2D> points, Point2D q) {
  std::int64_t sum = 0;
  for (const WeightedPoint2D& p : points) {
    if (p.x <= q.x && p.y <= q.y) sum += p.weight;
  }
  return sum;
}

bool Box4D::contains(const Point4D& p) const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (p[i] < lo[i] || p[i] > hi[i]) return false;
  }
  return true;
}

bool report4d_nonempty(std::span<const Point4D> points, const Box4D& box) {
  return std::any_of(points.begin(), points.end(), [&](const Point4D& p) { return box.contains(p); });
}

bool stab1d(std::span<const Interval> intervals, Coord q) {
  return std::any_of(intervals.begin(), intervals.end(), [&](const Interval& i) { return i.contains(q); });
}

PartialMatchDb::PartialMatchDb(std::size_t dimension) : dimension_(dimension) {
  require(dimension > 0, "PartialMatchDb: dimension must be positive");
}

void PartialMatchDb::insert(BitString s) {
  require(s.size() == dimension_, "PartialMatchDb: string length differs from dimension");
  strings_.insert(std::move(s));
}

Pattern parse_pattern(const std::string& text) {
  Pattern out;
  for (char c : text) {
    switch (c) {
      case '0': out.push_back(Symbol::Zero); break;
      case '1': out.push_back(Symbol::One); break;
      case '*': out.push_back(Symbol::Star); break;
      case ' ': break;
      default: throw InvalidInput("pattern symbols are 0, 1 and *");
    }
  }
  return out;
}

BitString parse_bitstring(const std::string& text) {
  BitString out;
  for (char c : text) {
    if (c == ' ') continue;
    require(c == '0' || c == '1', "bit strings contain only 0 and 1");
    out.push_back(c == '1');
  }
  return out;
}

bool partial_match(const PartialMatchDb& db, const Pattern& pattern) {
  require(pattern.size() == db.dimension(), "partial_match: dimension mismatch");
  for (const BitString& s : db.strings()) {
    bool ok = true;
    for (std::size_t i = 0; i < pattern.size() && ok; ++i) {
      if (pattern[i] == Symbol::Star) continue;
      ok = s[i] == (pattern[i] == Symbol::One);
    }
    if (ok) return true;
  }
  return false;
}

bool dominance_match(const PartialMatchDb& db, const BitString& query) {
  require(query.size() == db.dimension(), "dominance_match: dimension mismatch");
  for (const BitString& s : db.strings()) {
    bool dominated = true;
    for (std::size_t i = 0; i < query.size() && dominated; ++i) dominated = !s[i] || query[i];
    if (dominated) return true;
  }
  return false;
}

Pattern dominance_to_pattern(const BitString& query) {
  Pattern out;
  out.reserve(query.size());
  for (bool bit : query) out.push_back(bit ? Symbol::Star : Symbol::Zero);
  return out;
}

MarkedTree::MarkedTree(std::uint32_t degree, std::uint32_t depth) : degree_(degree), depth_(depth) {
  require(degree >= 2, "MarkedTree: degree must be at least 2");
  require(depth >= 1, "MarkedTree: depth must be at least 1");
}

void MarkedTree::validate_node(const Digits& node) const {
  require(node.size() <= depth_, "MarkedTree: node deeper than the tree");
  for (std::uint32_t digit : node) require(digit < degree_, "MarkedTree: digit out of range");
}

void MarkedTree::mark(const Digits& node) {
  validate_node(node);
  marks_.insert(node);
}

void MarkedTree::unmark(const Digits& node) {
  validate_node(node);
  require(marks_.erase(node) == 1, "MarkedTree: unmark of an unmarked node");
}

bool MarkedTree::is_marked(const Digits& node) const { return marks_.contains(node); }

bool ma_query(const MarkedTree& tree, const Digits& leaf) {
  tree.validate_node(leaf);
  require(leaf.size() == tree.depth(), "ma_query: query node is not a leaf");
  Digits prefix;
  prefix.reserve(leaf.size());
  if (tree.is_marked(prefix)) return true;
  for (std::uint32_t digit : leaf) {
    prefix.push_back(digit);
    if (tree.is_marked(prefix)) return true;
  }
  return false;
}

std::uint64_t leaf_index(const MarkedTree& tree, const Digits& leaf) {
  tree.validate_node(leaf);
  require(leaf.size() == tree.depth(), "leaf_index: not a leaf");
  std::uint64_t index = 0;
  for (std::uint32_t digit : leaf) index = index * tree.degree() + digit;
  return index;
}

Dsu::Dsu(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

void Dsu::check(std::size_t a) const { require(a < parent_.size(), "Dsu: index out of range"); }

std::size_t Dsu::find(std::size_t a) {
  check(a);
  std::size_t root = a;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[a] != root) {
    std::size_t next = parent_[a];
    parent_[a] = root;
    a = next;
  }
  return root;
}

bool Dsu::unite(std::size_t a, std::size_t b) {
  std::size_t ra = find(a);
  std::size_t rb = find(b);
  if (ra == rb) return false;
  if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
  parent_[rb] = ra;
  if (rank_[ra] == rank_[rb]) ++rank_[ra];
  return true;
}

}  // namespace lbx
