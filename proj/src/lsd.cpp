#include "lbx/lsd.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace lbx {

void Transcript::send(Party from, std::vector<bool> bits) {
  (from == Party::Alice ? alice_bits_ : bob_bits_) += bits.size();
  messages_.push_back(Message{from, std::move(bits)});
}

void Transcript::append(const Transcript& other) {
  for (const Message& m : other.messages_) send(m.party, m.bits);
}

std::string Transcript::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const Message& m : messages_) {
    out.push_back({{"party", m.party == Party::Alice ? "alice" : "bob"}, {"bits", bits_to_string(m.bits)}});
  }
  return out.dump();
}

Transcript Transcript::from_json(const std::string& text) {
  Transcript t;
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("transcript: ") + e.what());
  }
  require(parsed.is_array(), "transcript JSON must be an array");
  for (const auto& entry : parsed) {
    require(entry.is_object() && entry.contains("party") && entry.contains("bits"),
            "transcript entries need party and bits");
    const std::string party = entry.at("party").get<std::string>();
    require(party == "alice" || party == "bob", "transcript party must be alice or bob");
    t.send(party == "alice" ? Party::Alice : Party::Bob, bits_from_string(entry.at("bits").get<std::string>()));
  }
  return t;
}

void LsdInstance::validate() const {
  require(blocks >= 1 && block_size >= 1, "LSD instance needs N >= 1 and B >= 1");
  const std::uint64_t universe = blocks * block_size;
  require(s.empty() || *s.rbegin() < universe, "S element outside [N*B]");
  require(t.empty() || *t.rbegin() < universe, "T element outside [N*B]");
}

void BlockedLsdInstance::validate() const {
  require(blocks >= 1 && block_size >= 1, "Blocked-LSD needs N >= 1 and B >= 1");
  require(s.size() == blocks, "Blocked-LSD: Alice needs exactly one value per block");
  for (std::uint32_t v : s) require(v < block_size, "Blocked-LSD: S value out of range");
  for (const auto& [x, v] : t) require(x < blocks && v < block_size, "Blocked-LSD: T element out of range");
  require(origin.empty() || origin.size() == blocks, "Blocked-LSD: origin table has the wrong size");
}

bool TwoBlockedLsdInstance::satisfies_permutation_invariant() const {
  if (block_size == 0 || blocks % block_size != 0) return false;
  const std::uint64_t groups = super_blocks();
  std::vector<std::uint32_t> row_hits(groups * block_size, 0);
  std::vector<std::uint32_t> col_hits(groups * block_size, 0);
  for (const Triple& e : s) {
    if (e.x >= groups || e.y >= block_size || e.z >= block_size) return false;
    ++row_hits[e.x * block_size + e.y];
    ++col_hits[e.x * block_size + e.z];
  }
  auto all_one = [](const std::vector<std::uint32_t>& hits) {
    return std::all_of(hits.begin(), hits.end(), [](std::uint32_t h) { return h == 1; });
  };
  return all_one(row_hits) && all_one(col_hits);
}

void TwoBlockedLsdInstance::validate() const {
  require(block_size >= 1 && blocks >= 1 && blocks % block_size == 0, "2-Blocked-LSD: N must be a positive multiple of B");
  require(satisfies_permutation_invariant(), "2-Blocked-LSD: S is not a permutation pattern in every super-block");
  for (const Triple& e : t) {
    require(e.x < super_blocks() && e.y < block_size && e.z < block_size, "2-Blocked-LSD: T element out of range");
  }
}

namespace {

template <typename Set>
bool disjoint(const Set& a, const Set& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

bool lsd_answer(const LsdInstance& inst) { return disjoint(inst.s, inst.t); }

bool lsd_answer(const BlockedLsdInstance& inst) {
  for (std::uint64_t x = 0; x < inst.s.size(); ++x) {
    if (inst.t.contains({x, inst.s[x]})) return false;
  }
  return true;
}

bool lsd_answer(const TwoBlockedLsdInstance& inst) { return disjoint(inst.s, inst.t); }

std::vector<bool> encode_counts_unary(const std::vector<std::uint64_t>& counts) {
  std::vector<bool> bits;
  for (std::uint64_t c : counts) {
    bits.insert(bits.end(), c, true);
    bits.push_back(false);
  }
  return bits;
}

std::vector<std::uint64_t> decode_counts_unary(const std::vector<bool>& bits, std::uint64_t parts) {
  std::vector<std::uint64_t> counts;
  std::uint64_t run = 0;
  for (bool bit : bits) {
    if (bit) {
      ++run;
    } else {
      counts.push_back(run);
      run = 0;
    }
  }
  require(run == 0 && counts.size() == parts, "unary count message is malformed");
  return counts;
}

std::vector<bool> encode_counts_binomial(const std::vector<std::uint64_t>& counts) {
  const std::uint64_t n = counts.size();
  require(n >= 1 && n <= 32, "binomial count encoding supports 1 <= N <= 32");
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts) sum += c;
  require(sum == n, "binomial count encoding needs counts summing to N");
  std::vector<bool> stars = encode_counts_unary(counts);
  stars.pop_back();  // the final separator is implied
  const auto length = static_cast<unsigned>(2 * n - 1);
  const std::uint64_t rank = rank_weighted_string(stars);
  return to_bits(rank, ceil_log2(binomial(length, n)));
}

std::vector<std::uint64_t> decode_counts_binomial(const std::vector<bool>& bits, std::uint64_t parts) {
  require(parts >= 1 && parts <= 32, "binomial count encoding supports 1 <= N <= 32");
  const auto length = static_cast<unsigned>(2 * parts - 1);
  require(bits.size() == ceil_log2(binomial(length, parts)), "binomial count message has the wrong width");
  std::vector<bool> stars = unrank_weighted_string(length, static_cast<unsigned>(parts), from_bits(bits));
  stars.push_back(false);
  return decode_counts_unary(stars, parts);
}

BlockedResult to_blocked(const LsdInstance& inst, CountEncoding encoding) {
  inst.validate();
  require(inst.s.size() == inst.blocks, "to_blocked: |S| must equal N");
  const std::uint64_t n = inst.blocks;
  const std::uint64_t b = inst.block_size;

  // Alice: per-block counts and her elements grouped by block.
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<std::vector<std::uint32_t>> values(n);
  for (std::uint64_t e : inst.s) {
    ++counts[e / b];
    values[e / b].push_back(static_cast<std::uint32_t>(e % b));
  }

  BlockedResult result;
  std::vector<bool> message =
      encoding == CountEncoding::Unary ? encode_counts_unary(counts) : encode_counts_binomial(counts);
  // Bob works only from what he received.
  const std::vector<std::uint64_t> received =
      encoding == CountEncoding::Unary ? decode_counts_unary(message, n) : decode_counts_binomial(message, n);
  result.transcript.send(Party::Alice, std::move(message));

  BlockedLsdInstance& out = result.instance;
  out.blocks = n;
  out.block_size = b;
  for (std::uint64_t block = 0; block < n; ++block) {
    for (std::uint64_t copy = 0; copy < received[block]; ++copy) out.origin.push_back({block, copy});
  }
  for (std::uint64_t x = 0; x < out.origin.size(); ++x) {
    const BlockOrigin& o = out.origin[x];
    for (auto it = inst.t.lower_bound(o.block * b); it != inst.t.end() && *it < (o.block + 1) * b; ++it) {
      out.t.insert({x, static_cast<std::uint32_t>(*it % b)});
    }
  }
  out.s.reserve(n);
  for (std::uint64_t x = 0; x < out.origin.size(); ++x) out.s.push_back(values[out.origin[x].block][out.origin[x].copy]);
  out.validate();
  return result;
}

TwoBlockedResult to_two_blocked(const BlockedLsdInstance& inst) {
  inst.validate();
  const std::uint64_t b = inst.block_size;
  require(inst.blocks % b == 0, "to_two_blocked: N must be divisible by B");
  const std::uint64_t groups = inst.blocks / b;

  TwoBlockedResult result;
  TwoBlockedLsdInstance& out = result.instance;
  out.blocks = inst.blocks;
  out.block_size = b;
  result.row_origin.reserve(inst.blocks);

  for (std::uint64_t g = 0; g < groups; ++g) {
    // Alice: columns of each row within the group.
    std::vector<std::vector<std::uint32_t>> row_columns(b);
    for (std::uint32_t col = 0; col < b; ++col) row_columns[inst.s[g * b + col]].push_back(col);
    std::vector<std::uint64_t> counts(b);
    for (std::uint64_t row = 0; row < b; ++row) counts[row] = row_columns[row].size();

    std::vector<bool> message = encode_counts_unary(counts);
    const std::vector<std::uint64_t> received = decode_counts_unary(message, b);
    result.transcript.send(Party::Alice, std::move(message));

    std::uint32_t new_row = 0;
    for (std::uint32_t row = 0; row < b; ++row) {
      for (std::uint64_t copy = 0; copy < received[row]; ++copy, ++new_row) {
        result.row_origin.push_back({g, row, copy});
        // Bob copies row `row` of T; Alice keeps one of her row elements.
        for (std::uint32_t col = 0; col < b; ++col) {
          if (inst.t.contains({g * b + col, row})) out.t.insert({g, new_row, col});
        }
        out.s.insert({g, new_row, row_columns[row][copy]});
      }
    }
  }
  out.validate();
  return result;
}

// --- hard distributions -----------------------------------------------------

bool is_pair_set(std::uint64_t t_mask, std::uint64_t block_size) {
  if (block_size % 2 != 0 || block_size > 64) return false;
  if (block_size < 64 && (t_mask >> block_size) != 0) return false;
  for (std::uint64_t pair = 0; pair < block_size / 2; ++pair) {
    const std::uint64_t bits = (t_mask >> (2 * pair)) & 3U;
    if (bits != 1 && bits != 2) return false;
  }
  return true;
}

LsdInstance HardSample::to_instance() const {
  LsdInstance inst{blocks, block_size, {}, {}};
  for (std::uint64_t i = 0; i < blocks; ++i) {
    inst.s.insert(i * block_size + s[i]);
    for (std::uint64_t v = 0; v < block_size; ++v) {
      if ((t_mask[i] >> v) & 1U) inst.t.insert(i * block_size + v);
    }
  }
  return inst;
}

namespace {

void check_hard_params(std::uint64_t blocks, std::uint64_t block_size) {
  require(blocks >= 1, "hard distribution needs N >= 1");
  require(block_size >= 2 && block_size % 2 == 0, "hard distribution needs an even B >= 2");
  require(block_size <= 64, "hard distribution supports B <= 64");
}

// Process 1: T_i uniform over pair sets, then S_i uniform in the complement.
void process_one(Rng& rng, std::uint64_t block_size, std::uint32_t& s, std::uint64_t& t_mask) {
  t_mask = 0;
  std::vector<std::uint32_t> complement;
  for (std::uint64_t pair = 0; pair < block_size / 2; ++pair) {
    const std::uint64_t pick = rng.below(2);
    t_mask |= std::uint64_t{1} << (2 * pair + pick);
    complement.push_back(static_cast<std::uint32_t>(2 * pair + (1 - pick)));
  }
  s = complement[rng.below(complement.size())];
}

// Process 2: S_i uniform, then T_i avoids it and is uniform otherwise.
void process_two(Rng& rng, std::uint64_t block_size, std::uint32_t& s, std::uint64_t& t_mask) {
  s = static_cast<std::uint32_t>(rng.below(block_size));
  t_mask = 0;
  for (std::uint64_t pair = 0; pair < block_size / 2; ++pair) {
    std::uint64_t pick;
    if (s / 2 == pair) {
      pick = 1 - (s % 2);
    } else {
      pick = rng.below(2);
    }
    t_mask |= std::uint64_t{1} << (2 * pair + pick);
  }
}

void fill_dyes_block(HardSample& out, std::uint64_t i, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, i);
  const bool q = rng.below(2) == 1;
  out.q[i] = q;
  if (!q) {
    process_one(rng, out.block_size, out.s[i], out.t_mask[i]);
    out.reveal[i] = BlockReveal{false, out.s[i], 0};
  } else {
    process_two(rng, out.block_size, out.s[i], out.t_mask[i]);
    out.reveal[i] = BlockReveal{true, 0, out.t_mask[i]};
  }
}

HardSample empty_sample(std::uint64_t blocks, std::uint64_t block_size) {
  HardSample out;
  out.blocks = blocks;
  out.block_size = block_size;
  out.s.assign(blocks, 0);
  out.t_mask.assign(blocks, 0);
  out.q.assign(blocks, false);
  out.reveal.assign(blocks, std::nullopt);
  return out;
}

}  // namespace

HardSample sample_dyes(std::uint64_t blocks, std::uint64_t block_size, std::uint64_t seed) {
  check_hard_params(blocks, block_size);
  HardSample out = empty_sample(blocks, block_size);
  for (std::uint64_t i = 0; i < blocks; ++i) fill_dyes_block(out, i, seed);
  return out;
}

HardSample sample_dk(std::uint64_t blocks, std::uint64_t block_size, std::uint64_t k, std::uint64_t seed) {
  check_hard_params(blocks, block_size);
  require(k >= 1 && k <= blocks, "designated block k must satisfy 1 <= k <= N");
  HardSample out = empty_sample(blocks, block_size);
  out.designated = k;
  for (std::uint64_t i = 0; i < blocks; ++i) {
    if (i + 1 != k) {
      fill_dyes_block(out, i, seed);
      continue;
    }
    // Designated block: S_k and T_k uniform and independent; nothing revealed.
    Rng rng = Rng::stream(seed, i);
    out.s[i] = static_cast<std::uint32_t>(rng.below(block_size));
    std::uint64_t mask = 0;
    for (std::uint64_t pair = 0; pair < block_size / 2; ++pair) mask |= std::uint64_t{1} << (2 * pair + rng.below(2));
    out.t_mask[i] = mask;
  }
  return out;
}

namespace {

/// H(X | Y) in bits for a joint distribution given as ((x, y) -> p).
double conditional_entropy(const std::map<std::pair<std::uint64_t, std::uint64_t>, double>& joint) {
  std::map<std::uint64_t, double> marginal_y;
  for (const auto& [xy, p] : joint) marginal_y[xy.second] += p;
  double h = 0;
  for (const auto& [xy, p] : joint) {
    if (p > 0) h -= p * std::log2(p / marginal_y.at(xy.second));
  }
  return h;
}

}  // namespace

BlockEntropies block_entropy_exact(std::uint64_t block_size) {
  require(block_size >= 2 && block_size % 2 == 0, "block_entropy_exact needs an even B >= 2");
  require(block_size <= 16, "block_entropy_exact enumerates only B <= 16");
  const std::uint64_t pairs = block_size / 2;
  const std::uint64_t choices = std::uint64_t{1} << pairs;

  auto mask_of = [&](std::uint64_t picks) {
    std::uint64_t mask = 0;
    for (std::uint64_t pair = 0; pair < pairs; ++pair) mask |= std::uint64_t{1} << (2 * pair + ((picks >> pair) & 1U));
    return mask;
  };

  // Process 1: keys are (S, T).
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> one;
  for (std::uint64_t picks = 0; picks < choices; ++picks) {
    const std::uint64_t t = mask_of(picks);
    for (std::uint64_t v = 0; v < block_size; ++v) {
      if ((t >> v) & 1U) continue;
      one[{v, t}] += (1.0 / static_cast<double>(choices)) * (1.0 / static_cast<double>(pairs));
    }
  }
  // Process 2: keys are (T, S); the draw over all pair choices is filtered to
  // those avoiding S and renormalised.
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> two;
  for (std::uint64_t v = 0; v < block_size; ++v) {
    std::vector<std::uint64_t> allowed;
    for (std::uint64_t picks = 0; picks < choices; ++picks) {
      const std::uint64_t t = mask_of(picks);
      if (((t >> v) & 1U) == 0) allowed.push_back(t);
    }
    for (std::uint64_t t : allowed) {
      two[{t, v}] += (1.0 / static_cast<double>(block_size)) * (1.0 / static_cast<double>(allowed.size()));
    }
  }
  return BlockEntropies{conditional_entropy(one), conditional_entropy(two)};
}

std::pair<std::uint64_t, std::uint64_t> dk_intersection_exact(std::uint64_t block_size) {
  require(block_size >= 2 && block_size % 2 == 0 && block_size <= 32, "dk_intersection_exact needs an even 2 <= B <= 32");
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  const std::uint64_t all = std::uint64_t{1} << block_size;
  for (std::uint64_t t = 0; t < all; ++t) {
    if (!is_pair_set(t, block_size)) continue;
    for (std::uint64_t v = 0; v < block_size; ++v) {
      ++total;
      if ((t >> v) & 1U) ++hits;
    }
  }
  return {hits, total};
}

SupportSizes hard_support_sizes(std::uint64_t blocks, std::uint64_t block_size) {
  check_hard_params(blocks, block_size);
  require(blocks * block_size <= 20, "hard_support_sizes enumerates only N*B <= 20");
  SupportSizes out;
  const std::uint64_t universe = blocks * block_size;
  const std::uint64_t block_mask = (std::uint64_t{1} << block_size) - 1;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << universe); ++subset) {
    bool valid_s = true;
    bool valid_t = true;
    for (std::uint64_t i = 0; i < blocks; ++i) {
      const std::uint64_t part = (subset >> (i * block_size)) & block_mask;
      valid_s = valid_s && std::has_single_bit(part);
      valid_t = valid_t && is_pair_set(part, block_size);
    }
    out.s_count += valid_s ? 1 : 0;
    out.t_count += valid_t ? 1 : 0;
  }
  return out;
}

void write_lsd_instance(std::ostream& out, const LsdInstance& inst) {
  out << inst.blocks << ' ' << inst.block_size << "\nS:";
  for (std::uint64_t e : inst.s) out << ' ' << e;
  out << "\nT:";
  for (std::uint64_t e : inst.t) out << ' ' << e;
  out << '\n';
}

LsdInstance read_lsd_instance(std::istream& in) {
  LsdInstance inst;
  require(static_cast<bool>(in >> inst.blocks >> inst.block_size), "LSD instance needs an 'N B' header");
  bool seen_s = false;
  bool seen_t = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    require(tag == "S:" || tag == "T:", "LSD instance lines start with 'S:' or 'T:'");
    auto& target = tag == "S:" ? inst.s : inst.t;
    (tag == "S:" ? seen_s : seen_t) = true;
    std::uint64_t e = 0;
    while (fields >> e) target.insert(e);
    require(fields.eof(), "LSD instance: non-numeric element");
  }
  require(seen_s && seen_t, "LSD instance needs both S: and T: lines");
  inst.validate();
  return inst;
}

}  // namespace lbx
