#pragma once

// Reductions out of structured LSD (to partial match and to butterfly
// reachability) and the compilers that turn cell-probe query algorithms
// into two-party protocols.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "lbx/butterfly.hpp"
#include "lbx/lsd.hpp"
#include "lbx/persistence.hpp"
#include "lbx/problems.hpp"

namespace lbx {

/// Injective map [B] -> {0,1}^b with every codeword of weight b/2. Equal
/// weights mean no codeword dominates a different one.
class ConstantWeightCode {
 public:
  ConstantWeightCode(std::uint64_t alphabet, unsigned length, std::vector<BitString> table);

  std::uint64_t alphabet() const { return alphabet_; }
  unsigned length() const { return length_; }
  unsigned weight() const { return length_ / 2; }
  const BitString& operator()(std::uint64_t symbol) const { return table_.at(symbol); }
  const std::vector<BitString>& table() const { return table_; }

 private:
  std::uint64_t alphabet_;
  unsigned length_;
  std::vector<BitString> table_;
};

/// b = smallest even length >= 2 with C(b, b/2) >= B; codewords are the
/// first B weight-b/2 strings in lexicographic order.
ConstantWeightCode make_code(std::uint64_t alphabet);

struct PartialMatchReduction {
  ConstantWeightCode code;
  BitString query;  // phi(s_0) phi(s_1) ... phi(s_{N-1})
  PartialMatchDb db;
};

/// The query dominates some database string iff S and T intersect.
PartialMatchReduction blocked_to_partial_match(const BlockedLsdInstance& inst);

struct ReachabilityReduction {
  Subgraph subgraph;                          // butterfly minus Bob's edges
  std::vector<EdgeRef> alice_edges;           // image of S
  std::vector<std::pair<Digits, Digits>> queries;  // (source, sink) per Alice path
};

/// (x, y, z) -> edge number z out of node y of microset x.
EdgeRef triple_to_edge(const ButterflyShape& shape, const Triple& e);

/// Requires B = b and N = d * b^d.
ReachabilityReduction two_blocked_to_reachability(const TwoBlockedLsdInstance& inst, const ButterflyShape& shape);

/// On every level, Alice's edges map that level's vertices bijectively onto the next level's.
bool edges_form_level_matchings(const ButterflyShape& shape, std::span<const EdgeRef> edges);

// --- cell-probe to communication -------------------------------------------

/// Static memory of S cells, each w bits wide.
class CellMemory {
 public:
  CellMemory(std::uint64_t cells, unsigned word_bits);
  CellMemory(unsigned word_bits, std::vector<Word> words);

  std::uint64_t cells() const { return words_.size(); }
  unsigned word_bits() const { return word_bits_; }
  Word at(Address addr) const;
  void set(Address addr, Word value);
  const std::vector<Word>& words() const { return words_; }

 private:
  unsigned word_bits_;
  std::vector<Word> words_;
};

/// Snapshot file: "S w" header, then S hex words separated by whitespace.
void write_memory(std::ostream& out, const CellMemory& memory);
CellMemory read_memory(std::istream& in);

/// An adaptive query algorithm, driven one probe at a time.
class QueryProgram {
 public:
  virtual ~QueryProgram() = default;
  /// Next cell to read, or nullopt once the answer is known.
  virtual std::optional<Address> next_probe() = 0;
  virtual void receive(Word word) = 0;
  virtual Word answer() const = 0;
};

struct DirectRun {
  Word answer = 0;
  std::uint64_t probes = 0;
};

DirectRun execute_direct(const CellMemory& memory, QueryProgram& program);

struct SingleQueryRun {
  Transcript transcript;
  Word answer = 0;
  std::uint64_t probes = 0;
};

/// Each probe: Alice sends the address in ceil(lg S) bits, Bob answers with w bits.
SingleQueryRun compile_single_query(const CellMemory& memory, QueryProgram& program);

struct ParallelQueryRun {
  Transcript transcript;
  std::vector<Word> answers;
  std::uint64_t rounds = 0;
  std::uint64_t subset_bits = 0;     // rounds * ceil(lg C(S, k))
  std::uint64_t reply_bits = 0;      // rounds * k * w
  std::uint64_t collision_rounds = 0;
  std::uint64_t collision_bits = 0;  // k * ceil(lg k) per collision round
  std::vector<std::vector<Address>> round_addresses;  // distinct addresses read per round
};

/// Per round, Alice names the k-subset of cells to read by its rank among
/// C(S, k) subsets. Fewer than k distinct addresses (shared cells or
/// finished queries) are padded with the smallest unused cells. When two
/// live queries share a cell, Alice also sends a k * ceil(lg k)-bit map from
/// queries to subset positions, tallied in collision_bits. Bob replies with
/// the k words in subset order.
ParallelQueryRun compile_parallel_queries(const CellMemory& memory, std::span<QueryProgram* const> programs);

/// Reads the path edges of one (source, sink) pair from a bit-per-edge table
/// (cell edge_id(e) holds 1 iff e is present). Answer 1 iff all are present.
class PathProbeProgram final : public QueryProgram {
 public:
  PathProbeProgram(const ButterflyShape& shape, const Digits& source, const Digits& sink);
  std::optional<Address> next_probe() override;
  void receive(Word word) override;
  Word answer() const override { return all_present_ ? 1 : 0; }

 private:
  std::vector<Address> addresses_;
  std::size_t next_ = 0;
  bool all_present_ = true;
};

/// One cell per edge, w = 1.
CellMemory reachability_table(const Subgraph& sub);

/// Scans a memory holding one database string per cell (bit i of the word
/// is coordinate i). Answer 1 iff some string is dominated by the query.
class DominanceScanProgram final : public QueryProgram {
 public:
  DominanceScanProgram(std::uint64_t cells, BitString query);
  std::optional<Address> next_probe() override;
  void receive(Word word) override;
  Word answer() const override { return found_ ? 1 : 0; }

 private:
  std::uint64_t cells_;
  Word query_;
  std::uint64_t next_ = 0;
  bool found_ = false;
};

/// One cell per database string, w = dimension. Pair with
/// DominanceScanProgram(db.size(), query).
CellMemory partial_match_table(const PartialMatchDb& db);

/// Adaptive pseudo-random probe sequence of fixed length; each address
/// depends on the seed and every word read so far.
class RandomWalkProgram final : public QueryProgram {
 public:
  RandomWalkProgram(std::uint64_t seed, std::uint64_t cells, std::uint64_t probes);
  std::optional<Address> next_probe() override;
  void receive(Word word) override;
  Word answer() const override { return digest_; }

 private:
  std::uint64_t cells_;
  std::uint64_t probes_;
  std::uint64_t done_ = 0;
  std::uint64_t state_;
  Word digest_ = 0;
};

/// lg n / lg(2 + S*w/n); reference value only. Requires n >= 2 and S*w >= n.
double bound_calculator(double n, double space, double word_bits);

}  // namespace lbx
