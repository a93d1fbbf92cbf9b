// lbx: reduction verification suites, hard-distribution statistics, the
// bound calculator, and file-format conversions.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lbx/butterfly.hpp"
#include "lbx/comm_reductions.hpp"
#include "lbx/geo_reductions.hpp"
#include "lbx/lsd.hpp"
#include "lbx/persistence.hpp"
#include "lbx/verify.hpp"

namespace {

int emit(const lbx::Report& report, const std::string& out_path) {
  const std::string text = report.to_json().dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    lbx::require(static_cast<bool>(out), "cannot write " + out_path);
    out << text;
    std::cout << (report.ok() ? "ok" : "FAILED") << ": " << report.failures() << " failures, report in " << out_path
              << "\n";
  }
  return report.ok() ? 0 : 1;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  lbx::require(static_cast<bool>(in), "cannot read " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  lbx::require(static_cast<bool>(out), "cannot write " + path);
  return out;
}

int convert(const std::string& kind, const std::string& in_path, const std::string& out_path) {
  auto in = open_in(in_path);
  auto out = open_out(out_path);
  if (kind == "stabbing") {
    const lbx::Subgraph sub = lbx::read_subgraph(in);
    lbx::write_rects(out, lbx::build_stabbing_instance(sub).rects);
  } else if (kind == "counting") {
    const lbx::RectSet rects = lbx::read_rects(in);
    lbx::write_weighted_points(out, lbx::stabbing_to_counting(rects));
  } else if (kind == "fpma") {
    const lbx::Subgraph sub = lbx::read_subgraph(in);
    lbx::write_version_tree(out, lbx::build_fpma_input(sub).tree, lbx::MarkedAncestorMachine::Codec{});
    out << "\n";
  } else if (kind == "memory") {
    const lbx::Subgraph sub = lbx::read_subgraph(in);
    lbx::write_memory(out, lbx::reachability_table(sub));
  } else if (kind == "blocked") {
    const lbx::LsdInstance inst = lbx::read_lsd_instance(in);
    out << lbx::to_blocked(inst).transcript.to_json() << "\n";
  } else {
    throw lbx::InvalidInput("unknown conversion: " + kind);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lbx: lower-bound reduction checker"};
  app.require_subcommand(1);

  lbx::VerifyConfig vc;
  std::string name;
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "Run a reduction verification suite");
  verify->add_option("name", name, "Reduction name")->required();
  verify->add_option("--b", vc.b, "Butterfly degree");
  verify->add_option("--d", vc.d, "Butterfly depth");
  verify->add_option("--N", vc.n_blocks, "Number of blocks");
  verify->add_option("--B", vc.block_size, "Block size");
  verify->add_option("--k", vc.k, "Parallel queries");
  verify->add_option("--trials", vc.trials, "Randomized trials");
  verify->add_option("--seed", vc.seed, "Seed");
  verify->add_flag("--exhaustive", vc.exhaustive, "Request exhaustive mode");
  verify->add_option("--out", out_path, "Report path (default stdout)");

  lbx::StatsConfig sc;
  auto* stats = app.add_subcommand("stats", "Hard-distribution statistics");
  stats->add_option("--N", sc.n_blocks, "Number of blocks");
  stats->add_option("--B", sc.block_size, "Block size (even)");
  stats->add_option("--k", sc.k, "Designated block, 1-based");
  stats->add_option("--samples,--trials", sc.samples, "Monte Carlo samples");
  stats->add_option("--seed", sc.seed, "Seed");
  stats->add_flag("--exhaustive", sc.exhaustive, "Request exhaustive mode");
  stats->add_option("--out", out_path, "Report path (default stdout)");

  lbx::BoundsConfig bc;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the query-time bound formula");
  bounds->add_option("--n", bc.n, "Problem size");
  bounds->add_option("--S", bc.space, "Cells");
  bounds->add_option("--w", bc.word_bits, "Word bits");
  bounds->add_option("--delta", bc.delta, "Exponent reported alongside the bound");
  bounds->add_option("--out", out_path, "Report path (default stdout)");

  std::string kind;
  std::string in_path;
  std::string convert_out;
  auto* conv = app.add_subcommand("convert", "Apply one reduction to an input file");
  conv->add_option("kind", kind, "stabbing | counting | fpma | memory | blocked")->required();
  conv->add_option("--in", in_path, "Input file")->required();
  conv->add_option("--out", convert_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*verify) return emit(lbx::run_verify(name, vc), out_path);
    if (*stats) return emit(lbx::run_stats(sc), out_path);
    if (*bounds) return emit(lbx::run_bounds(bc), out_path);
    if (*conv) return convert(kind, in_path, convert_out);
  } catch (const std::exception& e) {
    std::cerr << "lbx: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
