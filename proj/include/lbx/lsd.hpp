#pragma once

// Lopsided set disjointness at three levels of structure, the one-way
// protocols that move between them, and the block-product hard
// distributions with their exact statistics.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lbx/common.hpp"

namespace lbx {

enum class Party : std::uint8_t { Alice, Bob };

struct Message {
  Party party = Party::Alice;
  std::vector<bool> bits;
};

/// Ordered two-party message ledger.
class Transcript {
 public:
  void send(Party from, std::vector<bool> bits);
  void append(const Transcript& other);

  const std::vector<Message>& messages() const { return messages_; }
  std::uint64_t alice_bits() const { return alice_bits_; }
  std::uint64_t bob_bits() const { return bob_bits_; }

  /// JSON array of {"party": "alice"|"bob", "bits": "0101..."}.
  std::string to_json() const;
  static Transcript from_json(const std::string& text);

 private:
  std::vector<Message> messages_;
  std::uint64_t alice_bits_ = 0;
  std::uint64_t bob_bits_ = 0;
};

/// S, T subsets of [N*B]; element e lies in block e / B at value e % B.
struct LsdInstance {
  std::uint64_t blocks = 0;      // N
  std::uint64_t block_size = 0;  // B
  std::set<std::uint64_t> s;
  std::set<std::uint64_t> t;

  void validate() const;
};

/// Where a block of a rebalanced instance came from.
struct BlockOrigin {
  std::uint64_t block = 0;
  std::uint64_t copy = 0;
  friend bool operator==(const BlockOrigin&, const BlockOrigin&) = default;
};

/// Alice holds exactly one value per block.
struct BlockedLsdInstance {
  std::uint64_t blocks = 0;
  std::uint64_t block_size = 0;
  std::vector<std::uint32_t> s;                              // s[x] = value of (x, *)
  std::set<std::pair<std::uint64_t, std::uint32_t>> t;       // (block, value)
  std::vector<BlockOrigin> origin;                           // empty if not derived

  void validate() const;
};

struct Triple {
  std::uint64_t x = 0;  // super-block
  std::uint32_t y = 0;  // row
  std::uint32_t z = 0;  // column
  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Universe [N/B] x [B] x [B]. Within each super-block, Alice's elements
/// form a permutation matrix: one per row and one per column.
struct TwoBlockedLsdInstance {
  std::uint64_t blocks = 0;  // N, a multiple of B
  std::uint64_t block_size = 0;
  std::set<Triple> s;
  std::set<Triple> t;

  std::uint64_t super_blocks() const { return blocks / block_size; }
  bool satisfies_permutation_invariant() const;
  void validate() const;
};

bool lsd_answer(const LsdInstance& inst);
bool lsd_answer(const BlockedLsdInstance& inst);
bool lsd_answer(const TwoBlockedLsdInstance& inst);

// Count vectors (c_1..c_N) with sum N.

/// 1^{c_1} 0 1^{c_2} 0 ... 1^{c_N} 0, exactly 2N bits.
std::vector<bool> encode_counts_unary(const std::vector<std::uint64_t>& counts);
std::vector<std::uint64_t> decode_counts_unary(const std::vector<bool>& bits, std::uint64_t parts);

/// Rank of the count vector among the C(2N-1, N) compositions, written in
/// ceil(lg C(2N-1, N)) bits. Requires N <= 32.
std::vector<bool> encode_counts_binomial(const std::vector<std::uint64_t>& counts);
std::vector<std::uint64_t> decode_counts_binomial(const std::vector<bool>& bits, std::uint64_t parts);

enum class CountEncoding : std::uint8_t { Unary, Binomial };

struct BlockedResult {
  BlockedLsdInstance instance;
  Transcript transcript;
};

/// LSD with |S| = N to Blocked-LSD. Alice announces the per-block counts;
/// Bob repeats block i of T c_i times; Alice spreads block i's elements
/// over those copies.
BlockedResult to_blocked(const LsdInstance& inst, CountEncoding encoding = CountEncoding::Unary);

struct RowOrigin {
  std::uint64_t super_block = 0;
  std::uint32_t row = 0;
  std::uint64_t copy = 0;
};

struct TwoBlockedResult {
  TwoBlockedLsdInstance instance;
  Transcript transcript;
  std::vector<RowOrigin> row_origin;  // indexed by super_block * B + new row
};

/// Groups of B consecutive blocks become B x B matrices (row = value,
/// column = block within the group); rows are rebalanced with the same
/// count protocol, one 2B-bit message per group.
TwoBlockedResult to_two_blocked(const BlockedLsdInstance& inst);

// --- hard distributions -----------------------------------------------------

/// The half of block i that Q reveals: S_i when q_i = 0, T_i when q_i = 1.
struct BlockReveal {
  bool q = false;
  std::uint32_t s = 0;       // meaningful when !q
  std::uint64_t t_mask = 0;  // meaningful when q
};

struct HardSample {
  std::uint64_t blocks = 0;
  std::uint64_t block_size = 0;
  std::vector<std::uint32_t> s;       // S_i = {s[i]}
  std::vector<std::uint64_t> t_mask;  // T_i, bit v set iff v in T_i
  std::vector<bool> q;
  std::optional<std::uint64_t> designated;  // k, 1-based
  std::vector<std::optional<BlockReveal>> reveal;  // Q (or Q_{-k}; entry k empty)

  LsdInstance to_instance() const;
  bool block_intersects(std::uint64_t i) const { return ((t_mask[i] >> s[i]) & 1U) != 0; }
};

/// T_i takes exactly one of {2j, 2j+1} for every j.
bool is_pair_set(std::uint64_t t_mask, std::uint64_t block_size);

// Block i draws from Rng::stream(seed, i): first the coin q_i, then the
// draws of its process in increasing pair order.
HardSample sample_dyes(std::uint64_t blocks, std::uint64_t block_size, std::uint64_t seed);
HardSample sample_dk(std::uint64_t blocks, std::uint64_t block_size, std::uint64_t k, std::uint64_t seed);

struct BlockEntropies {
  double s_given_t = 0;  // process 1
  double t_given_s = 0;  // process 2
};

/// Conditional entropies in bits, by full enumeration of both processes. B even, 2 <= B <= 16.
BlockEntropies block_entropy_exact(std::uint64_t block_size);

/// Intersecting outcomes and total outcomes of the designated block of D_k,
/// enumerated over S_k x T_k.
std::pair<std::uint64_t, std::uint64_t> dk_intersection_exact(std::uint64_t block_size);

struct SupportSizes {
  std::uint64_t s_count = 0;
  std::uint64_t t_count = 0;
};

/// Counts subsets of [N*B] that are valid S (one per block) and valid T (one
/// per pair) by enumerating all 2^(N*B) subsets. N*B <= 20.
SupportSizes hard_support_sizes(std::uint64_t blocks, std::uint64_t block_size);

// Instance file: "N B", then "S: e1 e2 ...", then "T: e1 e2 ...".
void write_lsd_instance(std::ostream& out, const LsdInstance& inst);
LsdInstance read_lsd_instance(std::istream& in);

}  // namespace lbx
