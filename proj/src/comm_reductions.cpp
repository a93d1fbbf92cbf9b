#include "lbx/comm_reductions.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <set>

namespace lbx {

ConstantWeightCode::ConstantWeightCode(std::uint64_t alphabet, unsigned length, std::vector<BitString> table)
    : alphabet_(alphabet), length_(length), table_(std::move(table)) {
  require(length >= 2 && length % 2 == 0, "constant weight code length must be even and positive");
  require(table_.size() == alphabet_, "code table size differs from alphabet");
  std::set<BitString> seen;
  for (const BitString& word : table_) {
    require(word.size() == length_, "codeword has the wrong length");
    require(static_cast<unsigned>(std::count(word.begin(), word.end(), true)) == length_ / 2,
            "codeword weight differs from b/2");
    require(seen.insert(word).second, "codewords must be distinct");
  }
}

ConstantWeightCode make_code(std::uint64_t alphabet) {
  require(alphabet >= 1, "make_code: alphabet must be non-empty");
  unsigned length = 2;
  while (binomial(length, length / 2) < alphabet) length += 2;
  std::vector<BitString> table;
  table.reserve(alphabet);
  for (std::uint64_t symbol = 0; symbol < alphabet; ++symbol) {
    table.push_back(unrank_weighted_string(length, length / 2, symbol));
  }
  return ConstantWeightCode(alphabet, length, std::move(table));
}

PartialMatchReduction blocked_to_partial_match(const BlockedLsdInstance& inst) {
  inst.validate();
  ConstantWeightCode code = make_code(inst.block_size);
  const std::size_t b = code.length();
  const std::size_t dimension = inst.blocks * b;

  BitString query;
  query.reserve(dimension);
  for (std::uint32_t value : inst.s) {
    const BitString& word = code(value);
    query.insert(query.end(), word.begin(), word.end());
  }

  PartialMatchDb db(dimension);
  for (const auto& [x, y] : inst.t) {
    BitString row(dimension, false);
    const BitString& word = code(y);
    std::copy(word.begin(), word.end(), row.begin() + static_cast<std::ptrdiff_t>(x * b));
    db.insert(std::move(row));
  }
  return PartialMatchReduction{std::move(code), std::move(query), std::move(db)};
}

EdgeRef triple_to_edge(const ButterflyShape& shape, const Triple& e) {
  require(e.z < shape.degree(), "triple column exceeds butterfly degree");
  NodeRef node = microset_node(shape, microset_from_index(shape, e.x), e.y);
  return EdgeRef{node.level, std::move(node.digits), e.z};
}

bool edges_form_level_matchings(const ButterflyShape& shape, std::span<const EdgeRef> edges) {
  std::vector<std::set<Digits>> tails(shape.depth());
  std::vector<std::set<Digits>> heads(shape.depth());
  for (const EdgeRef& e : edges) {
    validate_edge(shape, e);
    if (!tails[e.level].insert(e.tail).second) return false;
    if (!heads[e.level].insert(e.head()).second) return false;
  }
  for (std::uint32_t level = 0; level < shape.depth(); ++level) {
    if (tails[level].size() != shape.width() || heads[level].size() != shape.width()) return false;
  }
  return true;
}

ReachabilityReduction two_blocked_to_reachability(const TwoBlockedLsdInstance& inst, const ButterflyShape& shape) {
  inst.validate();
  require(inst.block_size == shape.degree(), "reachability reduction needs B = b");
  require(inst.blocks == shape.non_sink_count(), "reachability reduction needs N = d * b^d");

  ReachabilityReduction out{Subgraph(shape), {}, {}};
  for (const Triple& e : inst.t) out.subgraph.remove_edge(triple_to_edge(shape, e));

  std::map<NodeRef, std::uint32_t> next_digit;
  out.alice_edges.reserve(inst.s.size());
  for (const Triple& e : inst.s) {
    EdgeRef edge = triple_to_edge(shape, e);
    next_digit[NodeRef{edge.level, edge.tail}] = edge.z;
    out.alice_edges.push_back(std::move(edge));
  }

  out.queries.reserve(shape.width());
  for (std::uint64_t i = 0; i < shape.width(); ++i) {
    Digits source = sink_from_index(shape, i);
    Digits current = source;
    for (std::uint32_t level = 0; level < shape.depth(); ++level) {
      current[level] = next_digit.at(NodeRef{level, current});
    }
    out.queries.emplace_back(std::move(source), std::move(current));
  }
  return out;
}

// --- memories and programs ---------------------------------------------------

CellMemory::CellMemory(std::uint64_t cells, unsigned word_bits) : word_bits_(word_bits), words_(cells, 0) {
  require(cells >= 1, "memory needs at least one cell");
  require(word_bits >= 1 && word_bits <= 64, "word size must be 1..64 bits");
}

CellMemory::CellMemory(unsigned word_bits, std::vector<Word> words) : word_bits_(word_bits), words_(std::move(words)) {
  require(!words_.empty(), "memory needs at least one cell");
  require(word_bits >= 1 && word_bits <= 64, "word size must be 1..64 bits");
  for (Word w : words_) require(word_bits_ == 64 || (w >> word_bits_) == 0, "word wider than the word size");
}

Word CellMemory::at(Address addr) const {
  require(addr < words_.size(), "probe outside memory");
  return words_[addr];
}

void CellMemory::set(Address addr, Word value) {
  require(addr < words_.size(), "write outside memory");
  require(word_bits_ == 64 || (value >> word_bits_) == 0, "word wider than the word size");
  words_[addr] = value;
}

void write_memory(std::ostream& out, const CellMemory& memory) {
  out << memory.cells() << ' ' << memory.word_bits() << '\n';
  const auto flags = out.flags();
  out << std::hex;
  for (std::size_t i = 0; i < memory.words().size(); ++i) {
    out << memory.words()[i] << ((i + 1) % 8 == 0 || i + 1 == memory.words().size() ? '\n' : ' ');
  }
  out.flags(flags);
}

CellMemory read_memory(std::istream& in) {
  std::uint64_t cells = 0;
  unsigned width = 0;
  require(static_cast<bool>(in >> cells >> width), "memory snapshot needs an 'S w' header");
  std::vector<Word> words;
  words.reserve(cells);
  for (std::uint64_t i = 0; i < cells; ++i) {
    Word w = 0;
    require(static_cast<bool>(in >> std::hex >> w), "memory snapshot has fewer words than declared");
    words.push_back(w);
  }
  std::string extra;
  require(!(in >> extra), "memory snapshot has more words than declared");
  return CellMemory(width, std::move(words));
}

DirectRun execute_direct(const CellMemory& memory, QueryProgram& program) {
  DirectRun run;
  while (auto addr = program.next_probe()) {
    program.receive(memory.at(*addr));
    ++run.probes;
  }
  run.answer = program.answer();
  return run;
}

SingleQueryRun compile_single_query(const CellMemory& memory, QueryProgram& program) {
  SingleQueryRun run;
  const unsigned address_bits = ceil_log2(memory.cells());
  while (auto addr = program.next_probe()) {
    require(*addr < memory.cells(), "probe outside memory");
    std::vector<bool> request = to_bits(*addr, address_bits);
    // Bob decodes the address from the bits he received.
    const Address asked = from_bits(request);
    run.transcript.send(Party::Alice, std::move(request));
    std::vector<bool> reply = to_bits(memory.at(asked), memory.word_bits());
    const Word word = from_bits(reply);
    run.transcript.send(Party::Bob, std::move(reply));
    program.receive(word);
    ++run.probes;
  }
  run.answer = program.answer();
  return run;
}

ParallelQueryRun compile_parallel_queries(const CellMemory& memory, std::span<QueryProgram* const> programs) {
  const std::uint64_t k = programs.size();
  const std::uint64_t cells = memory.cells();
  require(k >= 1, "compile_parallel_queries needs at least one query");
  require(k <= cells, "compile_parallel_queries: k exceeds the number of cells");
  const unsigned subset_width = ceil_log2(binomial(cells, k));
  const unsigned position_width = ceil_log2(k);

  ParallelQueryRun run;
  std::vector<bool> finished(k, false);
  while (true) {
    std::vector<std::optional<Address>> wanted(k);
    std::set<Address> distinct;
    std::uint64_t live = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
      if (finished[i]) continue;
      wanted[i] = programs[i]->next_probe();
      if (!wanted[i]) {
        finished[i] = true;
        continue;
      }
      require(*wanted[i] < cells, "probe outside memory");
      distinct.insert(*wanted[i]);
      ++live;
    }
    if (live == 0) break;
    ++run.rounds;
    run.round_addresses.emplace_back(distinct.begin(), distinct.end());
    const bool collision = distinct.size() < live;

    std::set<Address> subset = distinct;
    for (Address filler = 0; subset.size() < k; ++filler) subset.insert(filler);
    const std::vector<Address> sorted(subset.begin(), subset.end());

    std::vector<bool> request = to_bits(rank_subset(cells, sorted), subset_width);
    const std::vector<Address> asked = unrank_subset(cells, k, from_bits(request));
    run.transcript.send(Party::Alice, std::move(request));
    run.subset_bits += subset_width;

    if (collision) {
      std::vector<bool> map;
      map.reserve(k * position_width);
      for (std::uint64_t i = 0; i < k; ++i) {
        std::uint64_t position = 0;
        if (wanted[i]) position = static_cast<std::uint64_t>(std::lower_bound(sorted.begin(), sorted.end(), *wanted[i]) - sorted.begin());
        auto bits = to_bits(position, position_width);
        map.insert(map.end(), bits.begin(), bits.end());
      }
      run.collision_bits += map.size();
      ++run.collision_rounds;
      run.transcript.send(Party::Alice, std::move(map));
    }

    std::vector<bool> reply;
    reply.reserve(k * memory.word_bits());
    for (Address addr : asked) {
      auto bits = to_bits(memory.at(addr), memory.word_bits());
      reply.insert(reply.end(), bits.begin(), bits.end());
    }
    run.reply_bits += reply.size();
    // Alice splits the reply back into words in subset order.
    std::vector<Word> words(k);
    for (std::uint64_t j = 0; j < k; ++j) {
      words[j] = from_bits(std::vector<bool>(reply.begin() + static_cast<std::ptrdiff_t>(j * memory.word_bits()),
                                             reply.begin() + static_cast<std::ptrdiff_t>((j + 1) * memory.word_bits())));
    }
    run.transcript.send(Party::Bob, std::move(reply));

    for (std::uint64_t i = 0; i < k; ++i) {
      if (!wanted[i]) continue;
      const auto pos = std::lower_bound(asked.begin(), asked.end(), *wanted[i]) - asked.begin();
      programs[i]->receive(words[static_cast<std::size_t>(pos)]);
    }
  }
  run.answers.reserve(k);
  for (QueryProgram* program : programs) run.answers.push_back(program->answer());
  return run;
}

PathProbeProgram::PathProbeProgram(const ButterflyShape& shape, const Digits& source, const Digits& sink) {
  for (const EdgeRef& e : path_edges(shape, source, sink)) addresses_.push_back(edge_id(shape, e));
}

std::optional<Address> PathProbeProgram::next_probe() {
  if (next_ >= addresses_.size()) return std::nullopt;
  return addresses_[next_];
}

void PathProbeProgram::receive(Word word) {
  all_present_ = all_present_ && word != 0;
  ++next_;
}

CellMemory reachability_table(const Subgraph& sub) {
  CellMemory memory(sub.shape().edge_count(), 1);
  for (std::uint64_t id = 0; id < sub.shape().edge_count(); ++id) {
    memory.set(id, sub.is_missing(edge_from_id(sub.shape(), id)) ? 0 : 1);
  }
  return memory;
}

namespace {

Word pack_bits(const BitString& bits) {
  require(bits.size() <= 64, "strings longer than 64 bits do not fit one word");
  Word w = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) w |= Word{1} << i;
  }
  return w;
}

}  // namespace

DominanceScanProgram::DominanceScanProgram(std::uint64_t cells, BitString query)
    : cells_(cells), query_(pack_bits(query)) {}

std::optional<Address> DominanceScanProgram::next_probe() {
  if (found_ || next_ >= cells_) return std::nullopt;
  return next_;
}

void DominanceScanProgram::receive(Word word) {
  found_ = (word & ~query_) == 0;
  ++next_;
}

CellMemory partial_match_table(const PartialMatchDb& db) {
  require(db.dimension() <= 64, "partial_match_table: dimension above 64");
  std::vector<Word> words;
  for (const BitString& s : db.strings()) words.push_back(pack_bits(s));
  // An empty database still gets one cell; scan programs built with
  // db.size() == 0 never probe it.
  if (words.empty()) words.push_back(0);
  return CellMemory(static_cast<unsigned>(db.dimension()), std::move(words));
}

RandomWalkProgram::RandomWalkProgram(std::uint64_t seed, std::uint64_t cells, std::uint64_t probes)
    : cells_(cells), probes_(probes), state_(splitmix64(seed)) {
  require(cells >= 1, "RandomWalkProgram needs a non-empty memory");
}

std::optional<Address> RandomWalkProgram::next_probe() {
  if (done_ >= probes_) return std::nullopt;
  return state_ % cells_;
}

void RandomWalkProgram::receive(Word word) {
  state_ = splitmix64(state_ ^ (word + 0x632be59bd9b4e019ULL * (done_ + 1)));
  digest_ = digest_ * 31 + word;
  ++done_;
}

double bound_calculator(double n, double space, double word_bits) {
  require(n >= 2, "bound_calculator needs n >= 2");
  require(space > 0 && word_bits > 0 && space * word_bits >= n, "bound_calculator needs S*w >= n");
  return std::log2(n) / std::log2(2.0 + space * word_bits / n);
}

}  // namespace lbx
