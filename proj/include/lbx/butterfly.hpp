#pragma once

// Butterfly graph of degree b and depth d. Levels and coordinates are
// 0-indexed; an edge out of level j rewrites coordinate j, so the unique
// source-to-sink path morphs the source into the sink one coordinate at a
// time. Every non-sink vertex has out-degree b, including the edge that
// keeps coordinate j unchanged.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "lbx/common.hpp"

namespace lbx {

class ButterflyShape {
 public:
  ButterflyShape(std::uint32_t degree, std::uint32_t depth);

  std::uint32_t degree() const { return degree_; }
  std::uint32_t depth() const { return depth_; }
  /// Vertices per level, b^d.
  std::uint64_t width() const { return width_; }
  /// Total edges, d * b^(d+1).
  std::uint64_t edge_count() const { return width_ * degree_ * depth_; }
  /// Non-sink vertices, d * b^d.
  std::uint64_t non_sink_count() const { return width_ * depth_; }

  void validate(const Digits& v) const;

  friend bool operator==(const ButterflyShape&, const ButterflyShape&) = default;

 private:
  std::uint32_t degree_;
  std::uint32_t depth_;
  std::uint64_t width_;
};

struct NodeRef {
  std::uint32_t level = 0;
  Digits digits;
  friend bool operator==(const NodeRef&, const NodeRef&) = default;
  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

/// Edge from (level, tail) to (level + 1, tail with coordinate `level` set to z).
struct EdgeRef {
  std::uint32_t level = 0;
  Digits tail;
  std::uint32_t z = 0;

  Digits head() const;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

void validate_edge(const ButterflyShape& shape, const EdgeRef& e);

/// Dense numbering of edges: level-major, then tail (as a plain base-b
/// number, coordinate 0 most significant), then z.
std::uint64_t edge_id(const ButterflyShape& shape, const EdgeRef& e);
EdgeRef edge_from_id(const ButterflyShape& shape, std::uint64_t id);
std::vector<EdgeRef> all_edges(const ButterflyShape& shape);

/// A subgraph of the butterfly described by the edges it lacks.
class Subgraph {
 public:
  explicit Subgraph(ButterflyShape shape) : shape_(shape) {}
  Subgraph(ButterflyShape shape, std::set<EdgeRef> missing);

  const ButterflyShape& shape() const { return shape_; }
  const std::set<EdgeRef>& missing() const { return missing_; }
  void remove_edge(const EdgeRef& e);
  bool is_missing(const EdgeRef& e) const { return missing_.contains(e); }

 private:
  ButterflyShape shape_;
  std::set<EdgeRef> missing_;
};

/// Subgraph whose missing edges are the set bits of `mask` under edge_id.
Subgraph subgraph_from_mask(const ButterflyShape& shape, std::uint64_t mask);
/// Each edge missing independently with probability 1/2 (or `missing_per_mille`/1000).
Subgraph random_subgraph(const ButterflyShape& shape, Rng& rng, unsigned missing_per_mille = 500);

std::vector<EdgeRef> path_edges(const ButterflyShape& shape, const Digits& source, const Digits& sink);

bool reachable(const Subgraph& sub, const Digits& source, const Digits& sink);

/// Coordinate 0 least significant.
std::uint64_t source_index(const ButterflyShape& shape, const Digits& v);
/// Coordinate 0 most significant.
std::uint64_t sink_index(const ButterflyShape& shape, const Digits& v);
Digits source_from_index(const ButterflyShape& shape, std::uint64_t index);
Digits sink_from_index(const ButterflyShape& shape, std::uint64_t index);

/// A group of b vertices on one non-sink level that differ only in the
/// coordinate their out-edges rewrite.
struct MicrosetId {
  std::uint32_t level = 0;
  Digits context;  // every coordinate except `level`, in order
  friend bool operator==(const MicrosetId&, const MicrosetId&) = default;
  friend auto operator<=>(const MicrosetId&, const MicrosetId&) = default;
};

std::uint64_t microset_count(const ButterflyShape& shape);
/// Level-major, then context read as a base-b number with its first entry most significant.
MicrosetId microset_from_index(const ButterflyShape& shape, std::uint64_t x);
std::uint64_t microset_index(const ButterflyShape& shape, const MicrosetId& m);

NodeRef microset_node(const ButterflyShape& shape, const MicrosetId& m, std::uint32_t position);

struct MicrosetSlot {
  MicrosetId microset;
  std::uint32_t position = 0;
};

MicrosetSlot microset_of(const ButterflyShape& shape, const NodeRef& node);

// Text format: one edge per line, "j:t0t1...t(d-1)->z" (the UTF-8 arrow
// U+2192 is accepted too); digits in base b written 0-9 then a-z.
std::string format_edge(const ButterflyShape& shape, const EdgeRef& e);
EdgeRef parse_edge(const ButterflyShape& shape, const std::string& line);

/// Subgraph file: first line "b d", then one missing edge per line.
void write_subgraph(std::ostream& out, const Subgraph& sub);
Subgraph read_subgraph(std::istream& in);

}  // namespace lbx
