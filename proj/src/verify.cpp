#include "lbx/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "lbx/butterfly.hpp"
#include "lbx/comm_reductions.hpp"
#include "lbx/generators.hpp"
#include "lbx/geo_reductions.hpp"
#include "lbx/lsd.hpp"
#include "lbx/persistence.hpp"
#include "lbx/problems.hpp"

namespace lbx {

bool Report::ok() const { return failures() == 0; }

std::uint64_t Report::failures() const {
  std::uint64_t total = 0;
  for (const auto& c : checks) total += c.failures;
  return total;
}

nlohmann::json Report::to_json() const {
  nlohmann::json out;
  out["schema"] = kReportSchema;
  out["command"] = command;
  out["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    out["checks"].push_back({{"name", c.name}, {"instances", c.instances}, {"failures", c.failures}, {"tallies", c.tallies}});
  }
  out["failures"] = failures();
  out["ok"] = ok();
  return out;
}

namespace {

nlohmann::json thresholds_json() {
  return {{"max_edges_for_all_subgraphs", Thresholds::kMaxEdgesForAllSubgraphs},
          {"max_universe_for_all_instances", Thresholds::kMaxUniverseForAllInstances},
          {"max_triples_for_all_instances", Thresholds::kMaxTriplesForAllInstances},
          {"max_entropy_block", Thresholds::kMaxEntropyBlock},
          {"max_support_universe", Thresholds::kMaxSupportUniverse}};
}

nlohmann::json echo(const std::string& name, const VerifyConfig& c) {
  return {{"name", "verify"},
          {"reduction", name},
          {"b", c.b},
          {"d", c.d},
          {"N", c.n_blocks},
          {"B", c.block_size},
          {"k", c.k},
          {"trials", c.trials},
          {"seed", c.seed},
          {"exhaustive_requested", c.exhaustive},
          {"thresholds", thresholds_json()}};
}

void mark_mode(CheckRecord& rec, bool exhaustive, bool requested) {
  rec.tallies["mode"] = exhaustive ? "exhaustive" : "randomized";
  if (requested && !exhaustive) rec.tallies["note"] = "parameters exceed the exhaustive threshold";
}

// --- subgraph suites -----------------------------------------------------------

void for_each_subgraph(const ButterflyShape& shape, const VerifyConfig& c, CheckRecord& rec,
                       const std::function<void(const Subgraph&)>& fn) {
  const bool exhaustive = shape.edge_count() <= Thresholds::kMaxEdgesForAllSubgraphs;
  mark_mode(rec, exhaustive, c.exhaustive);
  if (exhaustive) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << shape.edge_count()); ++mask) {
      fn(subgraph_from_mask(shape, mask));
    }
  } else {
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      Rng rng = Rng::stream(c.seed, trial);
      fn(random_subgraph(shape, rng));
    }
  }
}

Report verify_stabbing(const VerifyConfig& c) {
  const ButterflyShape shape(c.b, c.d);
  Report report;
  CheckRecord equiv{"stabbing-equals-unreachable"};
  std::uint64_t pairs = 0;
  std::uint64_t reachable_pairs = 0;
  std::uint64_t rects = 0;
  for_each_subgraph(shape, c, equiv, [&](const Subgraph& sub) {
    ++equiv.instances;
    const StabbingInstance inst = build_stabbing_instance(sub);
    rects += inst.rects.size();
    bool bad = false;
    for (std::uint64_t s = 0; s < shape.width(); ++s) {
      const Digits source = source_from_index(shape, s);
      for (std::uint64_t t = 0; t < shape.width(); ++t) {
        const Digits sink = sink_from_index(shape, t);
        const bool reach = reachable(sub, source, sink);
        const bool stabbed = stab2d(inst.rects, pair_to_point(shape, source, sink)).stabbed;
        ++pairs;
        reachable_pairs += reach ? 1 : 0;
        bad = bad || (stabbed == reach);
      }
    }
    equiv.failures += bad ? 1 : 0;
  });
  equiv.tallies["pairs"] = pairs;
  equiv.tallies["reachable_pairs"] = reachable_pairs;
  equiv.tallies["rectangles"] = rects;
  report.checks.push_back(std::move(equiv));

  CheckRecord area{"rectangle-area"};
  const Coord expected = static_cast<Coord>(ipow(c.b, c.d - 1));
  for (const EdgeRef& e : all_edges(shape)) {
    ++area.instances;
    area.failures += edge_to_rectangle(shape, e).area() == expected ? 0 : 1;
  }
  area.tallies["expected_area"] = expected;
  report.checks.push_back(std::move(area));
  return report;
}

// --- rectangle corpora -----------------------------------------------------------

struct Corpus {
  RectSet rects;
  Coord grid = 0;
};

/// Even trials: uniform rectangles on an 8x8 grid; odd trials: the
/// rectangles of a random b=2, d=2 butterfly subgraph (overlapping cut sets).
Corpus corpus_for(std::uint64_t seed, std::uint64_t trial) {
  Rng rng = Rng::stream(seed, trial);
  if (trial % 2 == 0) return {random_rects(1 + rng.below(12), 8, rng), 8};
  const ButterflyShape shape(2, 2);
  return {build_stabbing_instance(random_subgraph(shape, rng)).rects, static_cast<Coord>(shape.width())};
}

Report verify_counting(const VerifyConfig& c) {
  Report report;
  CheckRecord rec{"corner-trick"};
  rec.tallies["mode"] = "randomized";
  std::uint64_t queries = 0;
  std::uint64_t points = 0;
  for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
    const Corpus corpus = corpus_for(c.seed, trial);
    const WeightedPointSet weighted = stabbing_to_counting(corpus.rects);
    points += weighted.size();
    bool bad = false;
    for (Coord x = 0; x < corpus.grid; ++x) {
      for (Coord y = 0; y < corpus.grid; ++y) {
        ++queries;
        const auto expected = static_cast<std::int64_t>(stab2d(corpus.rects, {x, y}).count);
        bad = bad || dominance_count2d(weighted, {x, y}) != expected;
      }
    }
    ++rec.instances;
    rec.failures += bad ? 1 : 0;
  }
  rec.tallies["queries"] = queries;
  rec.tallies["weighted_points"] = points;
  report.checks.push_back(std::move(rec));
  return report;
}

Report verify_reporting4d(const VerifyConfig& c) {
  Report report;
  CheckRecord rec{"4d-lift"};
  rec.tallies["mode"] = "randomized";
  std::uint64_t queries = 0;
  for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
    const Corpus corpus = corpus_for(c.seed, trial);
    const Reporting4DInstance lifted = stabbing_to_reporting4d(corpus.rects);
    bool bad = false;
    for (Coord x = 0; x < corpus.grid; ++x) {
      for (Coord y = 0; y < corpus.grid; ++y) {
        ++queries;
        const bool expected = stab2d(corpus.rects, {x, y}).stabbed;
        bad = bad || report4d_nonempty(lifted.points, Reporting4DInstance::query_box({x, y})) != expected;
      }
    }
    ++rec.instances;
    rec.failures += bad ? 1 : 0;
  }
  rec.tallies["queries"] = queries;
  report.checks.push_back(std::move(rec));
  return report;
}

// --- marked ancestor suites ---------------------------------------------------------

Report verify_ma_stab1d(const VerifyConfig& c) {
  Report report;
  CheckRecord rec{"marked-ancestor-as-stabbing"};
  rec.tallies["mode"] = "randomized";
  const auto leaves = all_leaves(c.b, c.d);
  std::uint64_t queries = 0;
  std::uint64_t ops_total = 0;
  for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
    Rng rng = Rng::stream(c.seed, trial);
    const auto ops = random_mark_script(c.b, c.d, 1 + rng.below(40), rng);
    const auto interval_ops = ma_to_stabbing1d(c.b, c.d, ops);
    MarkedTree tree(c.b, c.d);
    IntervalMultiset live;
    bool bad = interval_ops.size() != ops.size();
    for (std::size_t i = 0; i < ops.size() && !bad; ++i) {
      if (ops[i].kind == MarkOpKind::Mark) {
        tree.mark(ops[i].node);
      } else {
        tree.unmark(ops[i].node);
      }
      live.apply(interval_ops[i]);
      for (const Digits& leaf : leaves) {
        ++queries;
        const Coord q = static_cast<Coord>(leaf_index(tree, leaf));
        bad = bad || ma_query(tree, leaf) != stab1d(live.intervals(), q);
      }
    }
    ops_total += ops.size();
    ++rec.instances;
    rec.failures += bad ? 1 : 0;
  }
  rec.tallies["operations"] = ops_total;
  rec.tallies["queries"] = queries;
  report.checks.push_back(std::move(rec));
  return report;
}

Report verify_dsu_ma(const VerifyConfig& c) {
  Report report;
  CheckRecord rec{"decremental-marked-ancestor"};
  rec.tallies["mode"] = "randomized";
  const auto nodes = all_tree_nodes(c.b, c.d);
  const auto leaves = all_leaves(c.b, c.d);
  std::uint64_t queries = 0;
  for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
    Rng rng = Rng::stream(c.seed, trial);
    const auto order = random_permutation(static_cast<std::uint32_t>(nodes.size()), rng);
    MarkedTree tree(c.b, c.d);
    for (const Digits& n : nodes) tree.mark(n);
    DecrementalMarkedAncestor dsu(c.b, c.d);
    bool bad = false;
    for (std::uint32_t idx : order) {
      tree.unmark(nodes[idx]);
      dsu.unmark(nodes[idx]);
      for (const Digits& leaf : leaves) {
        ++queries;
        bad = bad || dsu.query(leaf) != ma_query(tree, leaf);
      }
    }
    ++rec.instances;
    rec.failures += bad ? 1 : 0;
  }
  rec.tallies["queries"] = queries;
  report.checks.push_back(std::move(rec));
  return report;
}

Report verify_fpma(const VerifyConfig& c) {
  const ButterflyShape shape(c.b, c.d);
  Report report;

  CheckRecord slots{"slot-bijection"};
  std::set<SlotRef> seen;
  for (const EdgeRef& e : all_edges(shape)) {
    ++slots.instances;
    const SlotRef slot = edge_to_slot(shape, e);
    const bool depths_ok = slot.version_path.size() == e.level + 1U && slot.ma_node.size() == c.d - e.level;
    const bool fresh = seen.insert(slot).second;
    slots.failures += (depths_ok && fresh && slot_to_edge(shape, slot) == e) ? 0 : 1;
  }
  report.checks.push_back(std::move(slots));

  CheckRecord equiv{"fpma-equals-reachable"};
  CheckRecord count{"update-count"};
  std::uint64_t pairs = 0;
  for_each_subgraph(shape, c, equiv, [&](const Subgraph& sub) {
    ++equiv.instances;
    ++count.instances;
    const FpmaInput input = build_fpma_input(sub);
    count.failures += input.tree.total_updates() == sub.missing().size() ? 0 : 1;
    const auto store = record_full(MarkedAncestorMachine(c.b, c.d), input.tree);
    bool bad = false;
    for (std::uint64_t s = 0; s < shape.width(); ++s) {
      const Digits source = source_from_index(shape, s);
      for (std::uint64_t t = 0; t < shape.width(); ++t) {
        const Digits sink = sink_from_index(shape, t);
        ++pairs;
        bad = bad || reach_via_fpma(store, input, source, sink) != reachable(sub, source, sink);
      }
    }
    equiv.failures += bad ? 1 : 0;
  });
  equiv.tallies["pairs"] = pairs;
  count.tallies["mode"] = equiv.tallies["mode"];
  report.checks.push_back(std::move(equiv));
  report.checks.push_back(std::move(count));
  return report;
}

// --- LSD chain suites --------------------------------------------------------------

void check_lsd_params(const VerifyConfig& c) {
  require(c.n_blocks >= 1 && c.block_size >= 1, "N and B must be positive");
}

Report verify_blocked(const VerifyConfig& c) {
  check_lsd_params(c);
  Report report;
  CheckRecord unary{"to-blocked-unary"};
  CheckRecord binom{"to-blocked-binomial"};
  const std::uint64_t n = c.n_blocks;
  const unsigned binomial_bits = n <= 32 ? ceil_log2(binomial(2 * n - 1, n)) : 0;
  std::uint64_t max_bits = 0;
  auto run = [&](const LsdInstance& inst) {
    const bool expected = lsd_answer(inst);
    ++unary.instances;
    const BlockedResult u = to_blocked(inst, CountEncoding::Unary);
    max_bits = std::max(max_bits, u.transcript.alice_bits());
    unary.failures += (lsd_answer(u.instance) == expected && u.transcript.alice_bits() == 2 * n &&
                       u.transcript.bob_bits() == 0)
                          ? 0
                          : 1;
    if (n <= 32) {
      ++binom.instances;
      const BlockedResult r = to_blocked(inst, CountEncoding::Binomial);
      binom.failures += (lsd_answer(r.instance) == expected && r.transcript.alice_bits() == binomial_bits &&
                         r.instance.s == u.instance.s && r.instance.t == u.instance.t)
                            ? 0
                            : 1;
    }
  };
  const bool exhaustive = n * c.block_size <= Thresholds::kMaxUniverseForAllInstances;
  mark_mode(unary, exhaustive, c.exhaustive);
  if (exhaustive) {
    for_each_lsd_instance(n, c.block_size, run);
  } else {
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      Rng rng = Rng::stream(c.seed, trial);
      run(random_lsd_instance(n, c.block_size, 500, rng));
    }
  }
  unary.tallies["alice_bits_max"] = max_bits;
  unary.tallies["alice_bits_limit"] = 2 * n;
  binom.tallies["alice_bits"] = binomial_bits;
  report.checks.push_back(std::move(unary));
  report.checks.push_back(std::move(binom));
  return report;
}

Report verify_two_blocked(const VerifyConfig& c) {
  check_lsd_params(c);
  require(c.n_blocks % c.block_size == 0, "two-blocked needs N to be a multiple of B");
  Report report;
  CheckRecord rec{"to-two-blocked"};
  const std::uint64_t n = c.n_blocks;
  auto run = [&](const BlockedLsdInstance& inst) {
    ++rec.instances;
    const TwoBlockedResult r = to_two_blocked(inst);
    rec.failures += (lsd_answer(r.instance) == lsd_answer(inst) && r.instance.satisfies_permutation_invariant() &&
                     r.transcript.alice_bits() == 2 * n && r.transcript.alice_bits() <= 2 * n)
                        ? 0
                        : 1;
  };
  const bool exhaustive = n * c.block_size <= Thresholds::kMaxUniverseForAllInstances;
  mark_mode(rec, exhaustive, c.exhaustive);
  if (exhaustive) {
    for_each_blocked_instance(n, c.block_size, run);
  } else {
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      Rng rng = Rng::stream(c.seed, trial);
      run(random_blocked_instance(n, c.block_size, 500, rng));
    }
  }
  rec.tallies["alice_bits_per_instance"] = 2 * n;

  // The full chain from plain LSD.
  CheckRecord chain{"lsd-chain"};
  std::uint64_t total_max = 0;
  auto run_chain = [&](const LsdInstance& inst) {
    ++chain.instances;
    const BlockedResult one = to_blocked(inst);
    const TwoBlockedResult two = to_two_blocked(one.instance);
    total_max = std::max(total_max, one.transcript.alice_bits() + two.transcript.alice_bits());
    chain.failures += (lsd_answer(two.instance) == lsd_answer(inst) && one.transcript.alice_bits() <= 2 * n &&
                       two.transcript.alice_bits() <= 2 * n)
                          ? 0
                          : 1;
  };
  mark_mode(chain, exhaustive, c.exhaustive);
  if (exhaustive) {
    for_each_lsd_instance(n, c.block_size, run_chain);
  } else {
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      Rng rng = Rng::stream(c.seed ^ 0x5bd1e995ULL, trial);
      run_chain(random_lsd_instance(n, c.block_size, 500, rng));
    }
  }
  chain.tallies["alice_bits_total_max"] = total_max;
  report.checks.push_back(std::move(rec));
  report.checks.push_back(std::move(chain));
  return report;
}

Report verify_partial_match(const VerifyConfig& c) {
  check_lsd_params(c);
  Report report;
  CheckRecord rec{"dominance-equals-intersection"};
  const ConstantWeightCode code = make_code(c.block_size);
  const std::uint64_t dimension = c.n_blocks * code.length();
  auto run = [&](const BlockedLsdInstance& inst) {
    ++rec.instances;
    const PartialMatchReduction r = blocked_to_partial_match(inst);
    const bool expected = !lsd_answer(inst);
    const bool ok = r.query.size() == dimension && r.db.dimension() == dimension &&
                    dominance_match(r.db, r.query) == expected &&
                    partial_match(r.db, dominance_to_pattern(r.query)) == expected;
    rec.failures += ok ? 0 : 1;
  };
  const bool exhaustive = c.n_blocks * c.block_size <= Thresholds::kMaxUniverseForAllInstances;
  mark_mode(rec, exhaustive, c.exhaustive);
  if (exhaustive) {
    for_each_blocked_instance(c.n_blocks, c.block_size, run);
  } else {
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      Rng rng = Rng::stream(c.seed, trial);
      run(random_blocked_instance(c.n_blocks, c.block_size, 500, rng));
    }
  }
  rec.tallies["code_length"] = code.length();
  rec.tallies["dimension"] = dimension;
  report.checks.push_back(std::move(rec));
  return report;
}

/// Every 2-Blocked instance: one permutation per super-block, every T.
template <typename Fn>
void for_each_two_blocked_instance(std::uint64_t blocks, std::uint64_t block_size, Fn&& fn) {
  const std::uint64_t supers = blocks / block_size;
  const std::uint64_t triples = supers * block_size * block_size;
  require(triples <= 20, "for_each_two_blocked_instance: universe too large");
  std::vector<std::uint32_t> base(block_size);
  for (std::uint32_t i = 0; i < block_size; ++i) base[i] = i;
  std::vector<std::vector<std::uint32_t>> perms;
  do {
    perms.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  const std::uint64_t s_choices = ipow(perms.size(), static_cast<unsigned>(supers));
  for (std::uint64_t code = 0; code < s_choices; ++code) {
    for (std::uint64_t t_mask = 0; t_mask < (std::uint64_t{1} << triples); ++t_mask) {
      TwoBlockedLsdInstance inst{blocks, block_size, {}, {}};
      std::uint64_t rest = code;
      for (std::uint64_t x = 0; x < supers; ++x) {
        const auto& perm = perms[rest % perms.size()];
        rest /= perms.size();
        for (std::uint32_t y = 0; y < block_size; ++y) inst.s.insert({x, y, perm[y]});
      }
      for (std::uint64_t e = 0; e < triples; ++e) {
        if (((t_mask >> e) & 1U) == 0) continue;
        inst.t.insert({e / (block_size * block_size), static_cast<std::uint32_t>((e / block_size) % block_size),
                       static_cast<std::uint32_t>(e % block_size)});
      }
      fn(inst);
    }
  }
}

/// Alice's paths are vertex-disjoint: every node of every level lies on exactly one query path.
bool paths_vertex_disjoint(const ButterflyShape& shape, const ReachabilityReduction& r) {
  std::set<NodeRef> used;
  for (const auto& [source, sink] : r.queries) {
    for (const EdgeRef& e : path_edges(shape, source, sink)) {
      if (!used.insert(NodeRef{e.level, e.tail}).second) return false;
    }
  }
  return used.size() == shape.non_sink_count();
}

Report verify_reach_lsd(const VerifyConfig& c) {
  const ButterflyShape shape(c.b, c.d);
  const std::uint64_t n = shape.non_sink_count();
  Report report;
  CheckRecord structure{"matchings-and-paths"};
  CheckRecord equiv{"unreachable-iff-intersecting"};
  std::uint64_t queries = 0;
  auto run = [&](const TwoBlockedLsdInstance& inst) {
    const ReachabilityReduction r = two_blocked_to_reachability(inst, shape);
    ++structure.instances;
    structure.failures += (edges_form_level_matchings(shape, r.alice_edges) && r.queries.size() == shape.width() &&
                           r.queries.size() == n / c.d && paths_vertex_disjoint(shape, r))
                              ? 0
                              : 1;
    ++equiv.instances;
    bool some_blocked = false;
    for (const auto& [source, sink] : r.queries) {
      ++queries;
      some_blocked = some_blocked || !reachable(r.subgraph, source, sink);
    }
    equiv.failures += some_blocked != lsd_answer(inst) ? 0 : 1;
  };
  const bool exhaustive = n * c.b <= Thresholds::kMaxTriplesForAllInstances;
  mark_mode(equiv, exhaustive, c.exhaustive);
  if (exhaustive) {
    for_each_two_blocked_instance(n, c.b, run);
  } else {
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      Rng rng = Rng::stream(c.seed, trial);
      run(random_two_blocked_instance(n, c.b, 1 + static_cast<unsigned>(rng.below(200)), rng));
    }
  }
  structure.tallies["queries_per_instance"] = shape.width();
  equiv.tallies["queries"] = queries;
  equiv.tallies["N"] = n;
  equiv.tallies["B"] = c.b;
  report.checks.push_back(std::move(structure));
  report.checks.push_back(std::move(equiv));
  return report;
}

// --- compiler suite -----------------------------------------------------------------

Report verify_compiler(const VerifyConfig& c) {
  require(c.k >= 1, "k must be positive");
  Report report;
  CheckRecord single{"single-query"};
  CheckRecord parallel{"parallel-queries"};
  single.tallies["mode"] = "randomized";
  parallel.tallies["mode"] = "randomized";
  std::uint64_t probes_total = 0;
  std::uint64_t collision_rounds = 0;
  std::uint64_t collision_bits = 0;
  for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
    Rng rng = Rng::stream(c.seed, trial);
    const std::uint64_t cells = std::max<std::uint64_t>(c.k, 2 + rng.below(62));
    const unsigned w = 1 + static_cast<unsigned>(rng.below(16));
    CellMemory memory(cells, w);
    for (Address a = 0; a < cells; ++a) memory.set(a, rng.next() & ((Word{1} << w) - 1));
    const std::uint64_t probes = 1 + rng.below(20);
    const std::uint64_t program_seed = rng.next();

    ++single.instances;
    RandomWalkProgram direct(program_seed, cells, probes);
    const DirectRun expected = execute_direct(memory, direct);
    RandomWalkProgram compiled(program_seed, cells, probes);
    const SingleQueryRun run = compile_single_query(memory, compiled);
    probes_total += run.probes;
    single.failures += (run.answer == expected.answer && run.probes == expected.probes &&
                        run.transcript.alice_bits() == run.probes * ceil_log2(cells) &&
                        run.transcript.bob_bits() == run.probes * w)
                           ? 0
                           : 1;

    ++parallel.instances;
    std::vector<std::unique_ptr<RandomWalkProgram>> owners;
    std::vector<QueryProgram*> programs;
    std::vector<Word> answers;
    std::uint64_t max_probes = 0;
    for (std::uint64_t q = 0; q < c.k; ++q) {
      const std::uint64_t seed_q = rng.next();
      const std::uint64_t probes_q = rng.below(12);
      RandomWalkProgram alone(seed_q, cells, probes_q);
      answers.push_back(execute_direct(memory, alone).answer);
      max_probes = std::max(max_probes, probes_q);
      owners.push_back(std::make_unique<RandomWalkProgram>(seed_q, cells, probes_q));
      programs.push_back(owners.back().get());
    }
    const ParallelQueryRun prun = compile_parallel_queries(memory, programs);
    const std::uint64_t round_bits = ceil_log2(binomial(cells, c.k));
    collision_rounds += prun.collision_rounds;
    collision_bits += prun.collision_bits;
    parallel.failures += (prun.answers == answers && prun.rounds == max_probes &&
                          prun.subset_bits == prun.rounds * round_bits && prun.reply_bits == prun.rounds * c.k * w &&
                          prun.collision_bits == prun.collision_rounds * c.k * ceil_log2(c.k) &&
                          prun.transcript.alice_bits() == prun.subset_bits + prun.collision_bits &&
                          prun.transcript.bob_bits() == prun.reply_bits)
                             ? 0
                             : 1;
  }
  single.tallies["probes"] = probes_total;
  parallel.tallies["k"] = c.k;
  parallel.tallies["collision_rounds"] = collision_rounds;
  parallel.tallies["collision_bits"] = collision_bits;
  report.checks.push_back(std::move(single));
  report.checks.push_back(std::move(parallel));
  return report;
}

using Suite = Report (*)(const VerifyConfig&);

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table{
      {"stabbing", verify_stabbing},       {"counting", verify_counting},
      {"reporting4d", verify_reporting4d}, {"ma-stab1d", verify_ma_stab1d},
      {"fpma", verify_fpma},               {"dsu-ma", verify_dsu_ma},
      {"blocked", verify_blocked},         {"two-blocked", verify_two_blocked},
      {"partial-match", verify_partial_match}, {"reach-lsd", verify_reach_lsd},
      {"compiler", verify_compiler}};
  return table;
}

}  // namespace

const std::vector<std::string>& verify_names() {
  static const std::vector<std::string> names{"stabbing",  "counting",    "reporting4d",   "ma-stab1d",
                                              "fpma",      "dsu-ma",      "blocked",       "two-blocked",
                                              "partial-match", "reach-lsd", "compiler"};
  return names;
}

Report run_verify(const std::string& name, const VerifyConfig& config) {
  const auto it = suites().find(name);
  require(it != suites().end(), "unknown reduction name: " + name);
  require(config.b >= 2 && config.d >= 1, "need b >= 2 and d >= 1");
  require(config.trials >= 1, "need at least one trial");
  Report report = it->second(config);
  report.command = echo(name, config);
  return report;
}

Report run_stats(const StatsConfig& c) {
  require(c.block_size >= 2 && c.block_size % 2 == 0, "stats needs an even B >= 2");
  require(c.n_blocks >= 1, "stats needs N >= 1");
  require(c.k >= 1 && c.k <= c.n_blocks, "stats needs 1 <= k <= N");
  require(c.samples >= 1, "stats needs at least one sample");
  Report report;
  report.command = {{"name", "stats"},       {"N", c.n_blocks},   {"B", c.block_size},
                    {"k", c.k},              {"samples", c.samples}, {"seed", c.seed},
                    {"exhaustive_requested", c.exhaustive}, {"thresholds", thresholds_json()}};

  if (c.block_size <= 32) {
    CheckRecord exact{"dk-intersection-exact"};
    const auto [hits, total] = dk_intersection_exact(c.block_size);
    exact.instances = total;
    exact.failures = 2 * hits == total ? 0 : 1;
    exact.tallies["hits"] = hits;
    exact.tallies["total"] = total;
    exact.tallies["probability"] = static_cast<double>(hits) / static_cast<double>(total);
    report.checks.push_back(std::move(exact));
  }

  CheckRecord mc{"dk-monte-carlo"};
  CheckRecord yes{"dyes-disjoint"};
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < c.samples; ++i) {
    const std::uint64_t seed = splitmix64(c.seed + i);
    const HardSample dk = sample_dk(c.n_blocks, c.block_size, c.k, seed);
    hits += dk.block_intersects(c.k - 1) ? 1 : 0;
    bool others_disjoint = !dk.reveal[c.k - 1].has_value();
    for (std::uint64_t b = 0; b < c.n_blocks; ++b) {
      if (b + 1 != c.k) others_disjoint = others_disjoint && !dk.block_intersects(b);
    }
    ++mc.instances;
    mc.failures += others_disjoint ? 0 : 1;

    const HardSample dyes = sample_dyes(c.n_blocks, c.block_size, seed);
    ++yes.instances;
    yes.failures += lsd_answer(dyes.to_instance()) ? 0 : 1;
  }
  const double freq = static_cast<double>(hits) / static_cast<double>(c.samples);
  mc.tallies["hits"] = hits;
  mc.tallies["frequency"] = freq;
  mc.tallies["tolerance"] = 0.05;
  mc.tallies["within_tolerance"] = std::fabs(freq - 0.5) <= 0.05;
  if (c.samples >= 1000 && std::fabs(freq - 0.5) > 0.05) ++mc.failures;
  report.checks.push_back(std::move(mc));
  report.checks.push_back(std::move(yes));

  if (c.block_size <= Thresholds::kMaxEntropyBlock) {
    CheckRecord ent{"block-entropies"};
    const BlockEntropies h = block_entropy_exact(c.block_size);
    const double want1 = std::log2(static_cast<double>(c.block_size) / 2);
    const double want2 = static_cast<double>(c.block_size) / 2 - 1;
    ent.instances = 1;
    ent.failures = (std::fabs(h.s_given_t - want1) < 1e-9 && std::fabs(h.t_given_s - want2) < 1e-9) ? 0 : 1;
    ent.tallies["h_s_given_t"] = h.s_given_t;
    ent.tallies["h_t_given_s"] = h.t_given_s;
    ent.tallies["expected_h_s_given_t"] = want1;
    ent.tallies["expected_h_t_given_s"] = want2;
    report.checks.push_back(std::move(ent));
  }

  if (c.n_blocks * c.block_size <= Thresholds::kMaxSupportUniverse) {
    CheckRecord sup{"support-sizes"};
    const SupportSizes s = hard_support_sizes(c.n_blocks, c.block_size);
    const std::uint64_t want_s = ipow(c.block_size, static_cast<unsigned>(c.n_blocks));
    const std::uint64_t want_t = std::uint64_t{1} << (c.n_blocks * c.block_size / 2);
    sup.instances = std::uint64_t{1} << (c.n_blocks * c.block_size);
    sup.failures = (s.s_count == want_s && s.t_count == want_t) ? 0 : 1;
    sup.tallies["s_count"] = s.s_count;
    sup.tallies["t_count"] = s.t_count;
    report.checks.push_back(std::move(sup));
  }
  return report;
}

Report run_bounds(const BoundsConfig& c) {
  require(c.delta > 0 && c.delta < 1, "delta must lie in (0, 1)");
  Report report;
  report.command = {{"name", "bounds"}, {"n", c.n}, {"S", c.space}, {"w", c.word_bits}, {"delta", c.delta}};

  CheckRecord point{"bound"};
  point.instances = 1;
  point.tallies["value"] = bound_calculator(c.n, c.space, c.word_bits);
  point.tallies["delta_note"] = "partial match with n^(1-delta) bits per query; delta is reported, not used";
  report.checks.push_back(std::move(point));

  CheckRecord grid{"monotone-in-S"};
  const double n = c.n;
  const std::vector<double> spaces{n, n * std::log2(n), n * n};
  nlohmann::json curve = nlohmann::json::array();
  double previous = 0;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const double value = bound_calculator(n, std::max(spaces[i], n / c.word_bits), c.word_bits);
    curve.push_back({{"S", spaces[i]}, {"value", value}});
    ++grid.instances;
    if (i > 0 && value > previous) ++grid.failures;
    previous = value;
  }
  grid.tallies["curve"] = curve;
  report.checks.push_back(std::move(grid));
  return report;
}

}  // namespace lbx
