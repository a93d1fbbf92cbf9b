#include <doctest.h>

#include <algorithm>

#include "lbx/generators.hpp"
#include "lbx/problems.hpp"

using namespace lbx;

TEST_CASE("stab2d") {
  const RectSet none;
  CHECK(stab2d(none, {0, 0}).stabbed == false);
  CHECK(stab2d(none, {0, 0}).count == 0);

  const RectSet one{Rect2D(0, 3, 0, 3)};
  const auto r = stab2d(one, {2, 2});
  CHECK(r.stabbed);
  CHECK(r.count == 1);
  CHECK_FALSE(stab2d(one, {4, 2}).stabbed);
  CHECK(stab2d(one, {3, 3}).stabbed);  // closed on both ends
  CHECK_THROWS_AS(Rect2D(3, 2, 0, 0), InvalidInput);
}

TEST_CASE("stab2d count is invariant under rectangle order") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    RectSet rects = random_rects(10, 6, rng);
    RectSet shuffled = rects;
    const auto perm = random_permutation(static_cast<std::uint32_t>(rects.size()), rng);
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = rects[perm[i]];
    for (Coord x = 0; x < 6; ++x) {
      for (Coord y = 0; y < 6; ++y) CHECK(stab2d(rects, {x, y}).count == stab2d(shuffled, {x, y}).count);
    }
  }
}

TEST_CASE("dominance_count2d") {
  const WeightedPointSet none;
  CHECK(dominance_count2d(none, {5, 5}) == 0);
  const WeightedPointSet one{{1, 1, 1}};
  CHECK(dominance_count2d(one, {0, 0}) == 0);
  CHECK(dominance_count2d(one, {1, 1}) == 1);
  const WeightedPointSet mixed{{0, 0, 3}, {2, 1, -2}, {1, 5, 7}};
  CHECK(dominance_count2d(mixed, {2, 4}) == 1);
  CHECK(dominance_count2d(mixed, {9, 9}) == 8);
}

TEST_CASE("report4d_nonempty") {
  const std::vector<Point4D> none;
  CHECK_FALSE(report4d_nonempty(none, Box4D{{0, 0, 0, 0}, {9, 9, 9, 9}}));
  const std::vector<Point4D> one{{1, 2, 3, 4}};
  CHECK(report4d_nonempty(one, Box4D{{1, 2, 3, 4}, {1, 2, 3, 4}}));
  CHECK_FALSE(report4d_nonempty(one, Box4D{{1, 2, 3, 5}, {1, 2, 3, 5}}));
}

TEST_CASE("stab1d") {
  const std::vector<Interval> none;
  CHECK_FALSE(stab1d(none, 3));
  const std::vector<Interval> one{{0, 7}};
  CHECK(stab1d(one, 7));
  CHECK(stab1d(one, 0));
  CHECK_FALSE(stab1d(one, 8));
}

TEST_CASE("partial match and dominance examples") {
  PartialMatchDb db(2);
  db.insert(parse_bitstring("01"));
  CHECK(partial_match(db, parse_pattern("0*")));
  CHECK_FALSE(partial_match(db, parse_pattern("11")));
  CHECK_THROWS_AS(partial_match(db, parse_pattern("0*1")), InvalidInput);
  CHECK_THROWS_AS(db.insert(parse_bitstring("011")), InvalidInput);
  CHECK_THROWS_AS(parse_pattern("0x"), InvalidInput);

  PartialMatchDb zeros(4);
  zeros.insert(parse_bitstring("0000"));
  CHECK(dominance_match(zeros, parse_bitstring("0000")));
  PartialMatchDb high(4);
  high.insert(parse_bitstring("1000"));
  CHECK_FALSE(dominance_match(high, parse_bitstring("0111")));
  CHECK_THROWS_AS(dominance_match(high, parse_bitstring("011")), InvalidInput);

  CHECK(parse_pattern("1 0 *") == Pattern{Symbol::One, Symbol::Zero, Symbol::Star});
}

TEST_CASE("star form agrees with dominance for every string pair up to d = 8") {
  for (unsigned d = 1; d <= 8; ++d) {
    std::uint64_t mismatches = 0;
    for (std::uint64_t s = 0; s < (1ULL << d); ++s) {
      PartialMatchDb db(d);
      BitString row(d);
      for (unsigned i = 0; i < d; ++i) row[i] = ((s >> i) & 1U) != 0;
      db.insert(row);
      for (std::uint64_t q = 0; q < (1ULL << d); ++q) {
        BitString query(d);
        for (unsigned i = 0; i < d; ++i) query[i] = ((q >> i) & 1U) != 0;
        const bool oracle = (s & ~q) == 0;  // s is a submask of q
        if (dominance_match(db, query) != oracle) ++mismatches;
        if (partial_match(db, dominance_to_pattern(query)) != oracle) ++mismatches;
      }
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("marked ancestor query") {
  MarkedTree tree(2, 3);
  const auto leaves = all_leaves(2, 3);
  for (const auto& leaf : leaves) CHECK_FALSE(ma_query(tree, leaf));
  tree.mark({});
  for (const auto& leaf : leaves) CHECK(ma_query(tree, leaf));
  tree.unmark({});
  tree.mark({1, 0});
  CHECK(ma_query(tree, {1, 0, 0}));
  CHECK(ma_query(tree, {1, 0, 1}));
  CHECK_FALSE(ma_query(tree, {1, 1, 0}));
  CHECK_FALSE(ma_query(tree, {0, 0, 0}));
  CHECK(leaf_index(tree, {1, 0, 1}) == 5);

  CHECK_THROWS_AS(tree.mark({2}), InvalidInput);
  CHECK_THROWS_AS(tree.mark({0, 0, 0, 0}), InvalidInput);
  CHECK_THROWS_AS(tree.unmark({0}), InvalidInput);
  CHECK_THROWS_AS(ma_query(tree, {0, 0}), InvalidInput);
}

TEST_CASE("marked ancestor is monotone in the mark set") {
  Rng rng(5);
  const auto nodes = all_tree_nodes(3, 2);
  const auto leaves = all_leaves(3, 2);
  for (int trial = 0; trial < 100; ++trial) {
    MarkedTree tree(3, 2);
    std::vector<bool> before(leaves.size(), false);
    for (int step = 0; step < 6; ++step) {
      tree.mark(nodes[rng.below(nodes.size())]);
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        const bool now = ma_query(tree, leaves[i]);
        CHECK((!before[i] || now));
        before[i] = now;
      }
    }
  }
}

TEST_CASE("dsu") {
  Dsu dsu(2);
  CHECK(dsu.find(0) != dsu.find(1));
  CHECK(dsu.unite(0, 1));
  CHECK(dsu.find(0) == dsu.find(1));
  CHECK_FALSE(dsu.unite(1, 0));
  CHECK_THROWS_AS(dsu.find(2), InvalidInput);
  CHECK_THROWS_AS(dsu.unite(0, 5), InvalidInput);
}

TEST_CASE("dsu find is idempotent and unions persist") {
  Rng rng(3);
  const std::size_t n = 40;
  Dsu dsu(n);
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  for (int step = 0; step < 60; ++step) {
    const auto a = rng.below(n);
    const auto b = rng.below(n);
    dsu.unite(a, b);
    const auto from = label[a];
    const auto to = label[b];
    for (auto& l : label) {
      if (l == from) l = to;
    }
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(dsu.find(dsu.find(i)) == dsu.find(i));
      for (std::size_t j = 0; j < n; j += 7) CHECK((dsu.find(i) == dsu.find(j)) == (label[i] == label[j]));
    }
  }
}
