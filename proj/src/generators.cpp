#include "lbx/generators.hpp"

#include <numeric>

namespace lbx {

std::vector<std::uint32_t> random_permutation(std::uint32_t n, Rng& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0U);
  for (std::uint32_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

LsdInstance random_lsd_instance(std::uint64_t blocks, std::uint64_t block_size, unsigned t_per_mille, Rng& rng) {
  LsdInstance inst{blocks, block_size, {}, {}};
  const std::uint64_t universe = blocks * block_size;
  std::vector<std::uint64_t> pool(universe);
  std::iota(pool.begin(), pool.end(), 0ULL);
  for (std::uint64_t i = 0; i < blocks; ++i) {
    std::swap(pool[i], pool[i + rng.below(universe - i)]);
    inst.s.insert(pool[i]);
  }
  for (std::uint64_t e = 0; e < universe; ++e) {
    if (rng.below(1000) < t_per_mille) inst.t.insert(e);
  }
  return inst;
}

BlockedLsdInstance random_blocked_instance(std::uint64_t blocks, std::uint64_t block_size, unsigned t_per_mille,
                                           Rng& rng) {
  BlockedLsdInstance inst{blocks, block_size, {}, {}, {}};
  for (std::uint64_t x = 0; x < blocks; ++x) inst.s.push_back(static_cast<std::uint32_t>(rng.below(block_size)));
  for (std::uint64_t x = 0; x < blocks; ++x) {
    for (std::uint32_t v = 0; v < block_size; ++v) {
      if (rng.below(1000) < t_per_mille) inst.t.insert({x, v});
    }
  }
  return inst;
}

TwoBlockedLsdInstance random_two_blocked_instance(std::uint64_t blocks, std::uint64_t block_size,
                                                  unsigned t_per_mille, Rng& rng) {
  require(block_size >= 1 && blocks % block_size == 0, "random_two_blocked_instance: N must be a multiple of B");
  TwoBlockedLsdInstance inst{blocks, block_size, {}, {}};
  const auto b = static_cast<std::uint32_t>(block_size);
  for (std::uint64_t x = 0; x < blocks / block_size; ++x) {
    const auto perm = random_permutation(b, rng);
    for (std::uint32_t y = 0; y < b; ++y) inst.s.insert({x, y, perm[y]});
    for (std::uint32_t y = 0; y < b; ++y) {
      for (std::uint32_t z = 0; z < b; ++z) {
        if (rng.below(1000) < t_per_mille) inst.t.insert({x, y, z});
      }
    }
  }
  return inst;
}

RectSet random_rects(std::uint64_t count, Coord grid, Rng& rng) {
  RectSet out;
  out.reserve(count);
  const auto g = static_cast<std::uint64_t>(grid);
  for (std::uint64_t i = 0; i < count; ++i) {
    Coord x1 = static_cast<Coord>(rng.below(g));
    Coord x2 = static_cast<Coord>(rng.below(g));
    Coord y1 = static_cast<Coord>(rng.below(g));
    Coord y2 = static_cast<Coord>(rng.below(g));
    out.emplace_back(std::min(x1, x2), std::max(x1, x2), std::min(y1, y2), std::max(y1, y2));
  }
  return out;
}

std::vector<Digits> all_tree_nodes(std::uint32_t degree, std::uint32_t depth) {
  std::vector<Digits> out{{}};
  std::size_t level_start = 0;
  for (std::uint32_t k = 0; k < depth; ++k) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (std::uint32_t digit = 0; digit < degree; ++digit) {
        Digits child = out[i];
        child.push_back(digit);
        out.push_back(std::move(child));
      }
    }
    level_start = level_end;
  }
  return out;
}

std::vector<Digits> all_leaves(std::uint32_t degree, std::uint32_t depth) {
  auto nodes = all_tree_nodes(degree, depth);
  std::vector<Digits> leaves;
  for (auto& n : nodes) {
    if (n.size() == depth) leaves.push_back(std::move(n));
  }
  return leaves;
}

std::vector<MarkOp> random_mark_script(std::uint32_t degree, std::uint32_t depth, std::size_t length, Rng& rng) {
  const auto nodes = all_tree_nodes(degree, depth);
  std::vector<bool> marked(nodes.size(), false);
  std::size_t marked_count = 0;
  std::vector<MarkOp> ops;
  ops.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const bool unmark = marked_count > 0 && (marked_count == nodes.size() || rng.below(3) == 0);
    // Pick uniformly among the nodes in the required state.
    const std::size_t pool = unmark ? marked_count : nodes.size() - marked_count;
    std::uint64_t pick = rng.below(pool);
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      if (marked[n] != unmark) continue;
      if (pick-- == 0) {
        marked[n] = !unmark;
        if (unmark) {
          --marked_count;
        } else {
          ++marked_count;
        }
        ops.push_back(MarkOp{unmark ? MarkOpKind::Unmark : MarkOpKind::Mark, nodes[n]});
        break;
      }
    }
  }
  return ops;
}

std::vector<CounterMachine::Update> random_counter_updates(std::size_t count, std::uint64_t counters, Rng& rng) {
  using Kind = CounterMachine::Update::Kind;
  std::vector<CounterMachine::Update> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CounterMachine::Update u;
    u.counter = rng.below(counters);
    switch (rng.below(3)) {
      case 0: u.kind = Kind::Increment; break;
      case 1: u.kind = Kind::Add; u.value = rng.below(100); break;
      default: u.kind = Kind::Set; u.value = rng.below(100); break;
    }
    out.push_back(u);
  }
  return out;
}

std::vector<MarkOp> random_ma_updates(std::uint32_t degree, std::uint32_t depth, std::size_t count, Rng& rng) {
  const auto nodes = all_tree_nodes(degree, depth);
  std::vector<MarkOp> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(MarkOp{rng.below(3) == 0 ? MarkOpKind::Unmark : MarkOpKind::Mark, nodes[rng.below(nodes.size())]});
  }
  return out;
}

}  // namespace lbx
