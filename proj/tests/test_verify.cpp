#include <doctest.h>

#include "lbx/common.hpp"
#include "lbx/verify.hpp"

using namespace lbx;

namespace {

const CheckRecord* find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("every reduction passes on small parameters") {
  VerifyConfig cfg;
  cfg.trials = 40;
  for (const auto& name : verify_names()) {
    CAPTURE(name);
    const Report r = run_verify(name, cfg);
    CHECK(r.ok());
    CHECK(r.failures() == 0);
    CHECK_FALSE(r.checks.empty());
    for (const auto& c : r.checks) CHECK(c.instances > 0);
  }
  CHECK(verify_names().size() == 11);
}

TEST_CASE("verify rejects bad input") {
  CHECK_THROWS_AS(run_verify("nonsense", VerifyConfig{}), InvalidInput);
  VerifyConfig bad;
  bad.b = 1;
  CHECK_THROWS_AS(run_verify("stabbing", bad), InvalidInput);
  VerifyConfig zero;
  zero.trials = 0;
  CHECK_THROWS_AS(run_verify("stabbing", zero), InvalidInput);
}

TEST_CASE("reports are deterministic and self-describing") {
  VerifyConfig cfg;
  cfg.trials = 25;
  cfg.seed = 7;
  const auto a = run_verify("blocked", cfg).to_json();
  const auto b = run_verify("blocked", cfg).to_json();
  CHECK(a.dump() == b.dump());
  CHECK(a.at("schema") == kReportSchema);
  CHECK(a.at("command").at("seed") == 7);
  CHECK(a.at("command").at("thresholds").at("max_edges_for_all_subgraphs") == Thresholds::kMaxEdgesForAllSubgraphs);
  CHECK(a.at("ok") == true);
  CHECK(a.at("failures") == 0);
}

TEST_CASE("exhaustive requests") {
  VerifyConfig small;
  small.exhaustive = true;
  const Report r = run_verify("stabbing", small);
  const CheckRecord* c = find_check(r, "stabbing-equals-unreachable");
  REQUIRE(c != nullptr);
  CHECK(c->tallies.at("mode") == "exhaustive");
  CHECK(c->instances == (1ULL << 16));

  VerifyConfig big = small;
  big.d = 3;
  big.trials = 10;
  const Report rb = run_verify("stabbing", big);
  const CheckRecord* cb = find_check(rb, "stabbing-equals-unreachable");
  REQUIRE(cb != nullptr);
  CHECK(cb->tallies.at("mode") == "randomized");
  CHECK(cb->tallies.contains("note"));
  CHECK(rb.ok());
}

TEST_CASE("stats") {
  StatsConfig cfg;
  cfg.n_blocks = 2;
  cfg.block_size = 4;
  cfg.samples = 4000;
  const Report r = run_stats(cfg);
  CHECK(r.ok());
  const CheckRecord* ent = find_check(r, "block-entropies");
  REQUIRE(ent != nullptr);
  CHECK(ent->tallies.at("h_s_given_t").get<double>() == doctest::Approx(1.0));
  CHECK(ent->tallies.at("h_t_given_s").get<double>() == doctest::Approx(1.0));
  const CheckRecord* sup = find_check(r, "support-sizes");
  REQUIRE(sup != nullptr);
  CHECK(sup->tallies.at("s_count") == 16);
  CHECK(sup->tallies.at("t_count") == 16);
  const CheckRecord* mc = find_check(r, "dk-monte-carlo");
  REQUIRE(mc != nullptr);
  CHECK(mc->tallies.at("within_tolerance") == true);

  StatsConfig odd;
  odd.block_size = 3;
  CHECK_THROWS_AS(run_stats(odd), InvalidInput);
  StatsConfig far;
  far.k = 2;
  CHECK_THROWS_AS(run_stats(far), InvalidInput);
}

TEST_CASE("bounds") {
  const Report r = run_bounds(BoundsConfig{});
  CHECK(r.ok());
  const CheckRecord* point = find_check(r, "bound");
  REQUIRE(point != nullptr);
  CHECK(point->tallies.at("value").get<double>() == doctest::Approx(12.6186).epsilon(1e-4));
  CHECK(find_check(r, "monotone-in-S") != nullptr);
  BoundsConfig bad;
  bad.delta = 1.5;
  CHECK_THROWS_AS(run_bounds(bad), InvalidInput);
  BoundsConfig tiny;
  tiny.n = 1;
  CHECK_THROWS_AS(run_bounds(tiny), InvalidInput);
}
