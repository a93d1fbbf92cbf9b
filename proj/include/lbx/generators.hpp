#pragma once

// Seeded instance generators shared by the verification suites.

#include <cstdint>
#include <span>
#include <vector>

#include "lbx/butterfly.hpp"
#include "lbx/lsd.hpp"
#include "lbx/persistence.hpp"
#include "lbx/problems.hpp"

namespace lbx {

/// |S| = N drawn uniformly; each universe element joins T with probability t_per_mille / 1000.
LsdInstance random_lsd_instance(std::uint64_t blocks, std::uint64_t block_size, unsigned t_per_mille, Rng& rng);

/// Every |S| = N instance over [N*B] with every T; calls fn(instance).
template <typename Fn>
void for_each_lsd_instance(std::uint64_t blocks, std::uint64_t block_size, Fn&& fn) {
  const std::uint64_t universe = blocks * block_size;
  require(universe <= 20, "for_each_lsd_instance: universe too large to enumerate");
  const std::uint64_t s_choices = binomial(universe, blocks);
  for (std::uint64_t rank = 0; rank < s_choices; ++rank) {
    const auto s = unrank_subset(universe, blocks, rank);
    for (std::uint64_t t_mask = 0; t_mask < (std::uint64_t{1} << universe); ++t_mask) {
      LsdInstance inst{blocks, block_size, {s.begin(), s.end()}, {}};
      for (std::uint64_t e = 0; e < universe; ++e) {
        if ((t_mask >> e) & 1U) inst.t.insert(e);
      }
      fn(inst);
    }
  }
}

BlockedLsdInstance random_blocked_instance(std::uint64_t blocks, std::uint64_t block_size, unsigned t_per_mille,
                                           Rng& rng);

/// Every Blocked-LSD instance (B^N choices of S times 2^(N*B) choices of T).
template <typename Fn>
void for_each_blocked_instance(std::uint64_t blocks, std::uint64_t block_size, Fn&& fn) {
  const std::uint64_t universe = blocks * block_size;
  require(universe <= 20, "for_each_blocked_instance: universe too large to enumerate");
  const std::uint64_t s_choices = ipow(block_size, static_cast<unsigned>(blocks));
  for (std::uint64_t code = 0; code < s_choices; ++code) {
    for (std::uint64_t t_mask = 0; t_mask < (std::uint64_t{1} << universe); ++t_mask) {
      BlockedLsdInstance inst{blocks, block_size, {}, {}, {}};
      std::uint64_t rest = code;
      for (std::uint64_t x = 0; x < blocks; ++x) {
        inst.s.push_back(static_cast<std::uint32_t>(rest % block_size));
        rest /= block_size;
      }
      for (std::uint64_t e = 0; e < universe; ++e) {
        if ((t_mask >> e) & 1U) inst.t.insert({e / block_size, static_cast<std::uint32_t>(e % block_size)});
      }
      fn(inst);
    }
  }
}

/// A random permutation per super-block for S; T elementwise.
TwoBlockedLsdInstance random_two_blocked_instance(std::uint64_t blocks, std::uint64_t block_size,
                                                  unsigned t_per_mille, Rng& rng);

std::vector<std::uint32_t> random_permutation(std::uint32_t n, Rng& rng);

RectSet random_rects(std::uint64_t count, Coord grid, Rng& rng);

/// Valid mark/unmark script: marks pick unmarked nodes, unmarks marked ones.
std::vector<MarkOp> random_mark_script(std::uint32_t degree, std::uint32_t depth, std::size_t length, Rng& rng);

/// All nodes of the complete tree (root first, breadth-first).
std::vector<Digits> all_tree_nodes(std::uint32_t degree, std::uint32_t depth);
std::vector<Digits> all_leaves(std::uint32_t degree, std::uint32_t depth);

std::vector<CounterMachine::Update> random_counter_updates(std::size_t count, std::uint64_t counters, Rng& rng);

/// Arbitrary marks and unmarks (the machine accepts redundant ones).
std::vector<MarkOp> random_ma_updates(std::uint32_t degree, std::uint32_t depth, std::size_t count, Rng& rng);

/// Distributes `updates` in order over a random tree of `nodes` versions.
/// With `chain`, version i+1 is the only child of version i.
template <typename Update>
VersionTree<Update> random_version_tree(std::span<const Update> updates, std::size_t nodes, bool chain, Rng& rng) {
  require(nodes >= 1, "random_version_tree needs a node");
  VersionTree<Update> tree;
  for (std::size_t i = 1; i < nodes; ++i) {
    const auto parent = chain ? static_cast<VersionId>(i - 1) : static_cast<VersionId>(rng.below(i));
    tree.add_child(parent);
  }
  for (const Update& u : updates) tree.append_update(static_cast<VersionId>(rng.below(nodes)), u);
  return tree;
}

}  // namespace lbx
