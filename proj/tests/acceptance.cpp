// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lbx/comm_reductions.hpp"
#include "lbx/generators.hpp"
#include "lbx/persistence.hpp"
#include "lbx/verify.hpp"

using namespace lbx;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Folds a report into the outcome; every check must be clean.
void absorb(Outcome& out, const std::string& label, const Report& r) {
  std::uint64_t instances = 0;
  for (const auto& c : r.checks) instances += c.instances;
  if (!r.ok()) {
    out.pass = false;
    for (const auto& c : r.checks) {
      if (c.failures > 0) out.detail += label + "/" + c.name + " failures=" + std::to_string(c.failures) + "; ";
    }
  }
  out.detail += label + " instances=" + std::to_string(instances) + "; ";
}

void expect(Outcome& out, bool cond, const std::string& what) {
  if (!cond) {
    out.pass = false;
    out.detail += "failed: " + what + "; ";
  }
}

VerifyConfig shape_config(std::uint32_t b, std::uint32_t d, std::uint64_t trials, bool exhaustive) {
  VerifyConfig c;
  c.b = b;
  c.d = d;
  c.trials = trials;
  c.exhaustive = exhaustive;
  return c;
}

VerifyConfig lsd_config(std::uint64_t n, std::uint64_t block, std::uint64_t trials, bool exhaustive) {
  VerifyConfig c;
  c.n_blocks = n;
  c.block_size = block;
  c.trials = trials;
  c.exhaustive = exhaustive;
  return c;
}

const CheckRecord* find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

Outcome criterion_stabbing() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const Report all = run_verify("stabbing", shape_config(2, 2, 1, true));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  absorb(out, "b2d2", all);
  const CheckRecord* equiv = find_check(all, "stabbing-equals-unreachable");
  expect(out, equiv && equiv->tallies.value("mode", "") == "exhaustive" && equiv->instances == (1ULL << 16),
         "exhaustive sweep over 2^16 subgraphs");
  expect(out, secs < 60.0, "exhaustive sweep under one minute");
  absorb(out, "b2d3", run_verify("stabbing", shape_config(2, 3, 1000, false)));
  absorb(out, "b3d2", run_verify("stabbing", shape_config(3, 2, 1000, false)));
  return out;
}

Outcome criterion_corner() {
  Outcome out;
  absorb(out, "counting", run_verify("counting", shape_config(2, 2, 1000, false)));
  return out;
}

Outcome criterion_lift() {
  Outcome out;
  absorb(out, "reporting4d", run_verify("reporting4d", shape_config(2, 2, 1000, false)));
  return out;
}

Outcome criterion_persistence() {
  Outcome out;
  using CounterUpdate = CounterMachine::Update;
  std::uint64_t failures = 0;
  std::uint64_t queries = 0;
  const MarkedAncestorMachine ma(2, 3);
  const auto leaves = all_leaves(2, 3);
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    Rng rng = Rng::stream(404, trial);
    const bool chain = trial % 2 == 0;

    const auto counters = random_counter_updates(1 + rng.below(200), 6, rng);
    const auto cpart = record_partial(CounterMachine{}, std::span<const CounterUpdate>(counters));
    for (Timestamp tau = 0; tau <= counters.size(); tau += 7) {
      const std::span<const CounterUpdate> prefix(counters.data(), tau);
      for (Address c = 0; c < 6; ++c) {
        ++queries;
        failures += query_partial(cpart, c, tau) == replay(CounterMachine{}, prefix, c) ? 0 : 1;
      }
    }
    const auto ctree = random_version_tree(std::span<const CounterUpdate>(counters), 1 + rng.below(40), chain, rng);
    const auto cfull = record_full(CounterMachine{}, ctree);
    for (VersionId v = 0; v < ctree.size(); ++v) {
      const auto path = ctree.path_updates(v);
      for (Address c = 0; c < 6; ++c) {
        ++queries;
        failures += query_full(cfull, c, v) == replay(CounterMachine{}, std::span<const CounterUpdate>(path), c) ? 0 : 1;
      }
    }

    const auto marks = random_ma_updates(2, 3, 1 + rng.below(200), rng);
    const auto mpart = record_partial(ma, std::span<const MarkOp>(marks));
    for (Timestamp tau = 0; tau <= marks.size(); tau += 11) {
      const std::span<const MarkOp> prefix(marks.data(), tau);
      for (const auto& leaf : leaves) {
        ++queries;
        failures += query_partial(mpart, leaf, tau) == replay(ma, prefix, leaf) ? 0 : 1;
      }
    }
    const auto mtree = random_version_tree(std::span<const MarkOp>(marks), 1 + rng.below(40), chain, rng);
    const auto mfull = record_full(ma, mtree);
    for (VersionId v = 0; v < mtree.size(); ++v) {
      const auto path = mtree.path_updates(v);
      for (const auto& leaf : leaves) {
        ++queries;
        failures += query_full(mfull, leaf, v) == replay(ma, std::span<const MarkOp>(path), leaf) ? 0 : 1;
      }
    }
  }
  expect(out, failures == 0, std::to_string(failures) + " replay mismatches");
  out.detail += "scripts=1000 queries=" + std::to_string(queries) + "; ";
  return out;
}

Outcome criterion_fpma() {
  Outcome out;
  const Report all = run_verify("fpma", shape_config(2, 2, 1, true));
  absorb(out, "b2d2", all);
  const CheckRecord* equiv = find_check(all, "fpma-equals-reachable");
  expect(out, equiv && equiv->tallies.value("mode", "") == "exhaustive", "exhaustive sweep at b=2,d=2");
  absorb(out, "b2d3", run_verify("fpma", shape_config(2, 3, 1000, false)));
  return out;
}

Outcome criterion_chain() {
  Outcome out;
  const Report blocked = run_verify("blocked", lsd_config(2, 2, 1, true));
  absorb(out, "blocked N2B2", blocked);
  const CheckRecord* unary = find_check(blocked, "to-blocked-unary");
  expect(out, unary && unary->instances == 96, "all 96 instances at N=2,B=2");
  absorb(out, "two-blocked N2B2", run_verify("two-blocked", lsd_config(2, 2, 1, true)));
  absorb(out, "blocked N8B4", run_verify("blocked", lsd_config(8, 4, 1000, false)));
  absorb(out, "two-blocked N8B4", run_verify("two-blocked", lsd_config(8, 4, 1000, false)));
  return out;
}

Outcome criterion_partial_match() {
  Outcome out;
  for (std::uint64_t b : {2ULL, 4ULL}) {
    const Report r = run_verify("partial-match", lsd_config(2, b, 1, true));
    absorb(out, "B" + std::to_string(b), r);
    const CheckRecord* c = find_check(r, "dominance-equals-intersection");
    expect(out, c && c->tallies.value("mode", "") == "exhaustive", "exhaustive at B=" + std::to_string(b));
  }
  expect(out, make_code(4).length() == 4, "b = 4 at B = 4");
  expect(out, make_code(2).length() == 2, "b = 2 at B = 2");
  return out;
}

Outcome criterion_reachability() {
  Outcome out;
  const Report small = run_verify("reach-lsd", shape_config(2, 1, 1, true));
  absorb(out, "b2d1", small);
  const CheckRecord* c = find_check(small, "unreachable-iff-intersecting");
  expect(out, c && c->tallies.value("mode", "") == "exhaustive", "exhaustive at b=2,d=1");
  absorb(out, "b2d2", run_verify("reach-lsd", shape_config(2, 2, 1000, false)));
  return out;
}

Outcome criterion_distributions() {
  Outcome out;
  for (std::uint64_t b : {2ULL, 4ULL}) {
    StatsConfig c;
    c.n_blocks = 1;
    c.block_size = b;
    c.samples = 10000;
    const Report r = run_stats(c);
    absorb(out, "B" + std::to_string(b), r);
    const CheckRecord* mc = find_check(r, "dk-monte-carlo");
    expect(out, mc && mc->tallies.value("within_tolerance", false), "Monte Carlo within 0.05 at B=" + std::to_string(b));
    expect(out, find_check(r, "dk-intersection-exact") != nullptr, "exact enumeration at B=" + std::to_string(b));
  }
  for (std::uint64_t b : {2ULL, 4ULL, 8ULL}) {
    const BlockEntropies h = block_entropy_exact(b);
    const double want1 = std::log2(static_cast<double>(b) / 2);
    const double want2 = static_cast<double>(b) / 2 - 1;
    expect(out, std::fabs(h.s_given_t - want1) < 1e-9 && std::fabs(h.t_given_s - want2) < 1e-9,
           "entropies at B=" + std::to_string(b));
  }
  return out;
}

Outcome criterion_compiler() {
  Outcome out;
  for (std::uint64_t k : {1ULL, 2ULL, 4ULL}) {
    VerifyConfig c;
    c.k = k;
    c.trials = 100;
    absorb(out, "k" + std::to_string(k), run_verify("compiler", c));
  }
  return out;
}

Outcome criterion_pipeline() {
  Outcome out;
  const ButterflyShape shape(2, 2);
  std::uint64_t failures = 0;
  std::uint64_t intersecting = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Rng rng = Rng::stream(1111, trial);
    const auto inst = random_two_blocked_instance(shape.non_sink_count(), 2, static_cast<unsigned>(rng.below(400)), rng);
    const ReachabilityReduction r = two_blocked_to_reachability(inst, shape);
    const CellMemory memory = reachability_table(r.subgraph);
    std::vector<PathProbeProgram> programs;
    programs.reserve(r.queries.size());
    for (const auto& [source, sink] : r.queries) programs.emplace_back(shape, source, sink);
    std::vector<QueryProgram*> ptrs;
    for (auto& p : programs) ptrs.push_back(&p);
    const ParallelQueryRun run = compile_parallel_queries(memory, ptrs);
    bool some_blocked = false;
    for (Word a : run.answers) some_blocked = some_blocked || a == 0;
    intersecting += some_blocked ? 1 : 0;
    failures += (some_blocked == !lsd_answer(inst) && run.answers.size() == ipow(2, 2)) ? 0 : 1;
  }
  expect(out, failures == 0, std::to_string(failures) + " pipeline mismatches");
  expect(out, intersecting > 0 && intersecting < 100, "both answers occur");
  out.detail += "instances=100 intersecting=" + std::to_string(intersecting) + "; ";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"stabbing equals unreachability", criterion_stabbing},
      {"corner trick exactness", criterion_corner},
      {"4d lift", criterion_lift},
      {"persistence soundness", criterion_persistence},
      {"fully persistent marked ancestor", criterion_fpma},
      {"lsd chain", criterion_chain},
      {"partial match reduction", criterion_partial_match},
      {"reachability reduction", criterion_reachability},
      {"hard distributions", criterion_distributions},
      {"compiler accounting", criterion_compiler},
      {"end-to-end pipeline", criterion_pipeline},
  };
  const auto suite_start = std::chrono::steady_clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s) %.2fs: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                out.detail.c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  const bool in_time = total < 300.0;
  std::printf("%s total runtime %.2fs (limit 300s)\n", in_time ? "PASS" : "FAIL", total);
  return failed == 0 && in_time ? 0 : 1;
}
