#pragma once

// Partial and full persistence by simulation. A dynamic structure is a
// CellMachine: it owns no state and touches memory only through the
// CellAccess handed to it. Recording runs the updates once and keeps every
// cell write keyed by time (partial) or by version-tree node (full); queries
// re-run the machine's query algorithm against a read-only view that
// resolves each cell to the right historic value.

#include <algorithm>
#include <cctype>
#include <iterator>
#include <span>
#include <concepts>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lbx/butterfly.hpp"
#include "lbx/problems.hpp"

namespace lbx {

using Address = std::uint64_t;
using Word = std::uint64_t;

class CellReader {
 public:
  virtual ~CellReader() = default;
  /// Cells never written read as 0.
  virtual Word read(Address addr) = 0;
};

class CellAccess : public CellReader {
 public:
  virtual void write(Address addr, Word value) = 0;
};

template <typename M>
concept CellMachine = requires(const M& machine, const typename M::Update& u, const typename M::Query& q,
                               CellAccess& access, CellReader& reader) {
  { machine.update(u, access) } -> std::same_as<void>;
  { machine.query(q, reader) } -> std::same_as<typename M::Answer>;
};

/// Plain memory, used for fresh replays.
class FreshMemory final : public CellAccess {
 public:
  Word read(Address addr) override {
    auto it = cells_.find(addr);
    return it == cells_.end() ? 0 : it->second;
  }
  void write(Address addr, Word value) override { cells_[addr] = value; }

 private:
  std::unordered_map<Address, Word> cells_;
};

/// Reference answer: apply `updates` to a fresh memory, then query.
template <CellMachine M>
typename M::Answer replay(const M& machine, std::span<const typename M::Update> updates, const typename M::Query& q) {
  FreshMemory memory;
  for (const auto& u : updates) machine.update(u, memory);
  return machine.query(q, memory);
}

// --- partial persistence ---------------------------------------------------

using Timestamp = std::uint64_t;

struct TimedWrite {
  Timestamp time = 0;
  Word value = 0;
  friend bool operator==(const TimedWrite&, const TimedWrite&) = default;
};

/// Per-address write history, timestamps strictly increasing.
using WriteLog = std::unordered_map<Address, std::vector<TimedWrite>>;

template <CellMachine M>
class PartialStore {
 public:
  PartialStore(M machine, WriteLog log, Timestamp updates)
      : machine_(std::move(machine)), log_(std::move(log)), updates_(updates) {}

  const M& machine() const { return machine_; }
  const WriteLog& log() const { return log_; }
  Timestamp update_count() const { return updates_; }

  /// Value of `addr` after the first `tau` updates.
  Word value_at(Address addr, Timestamp tau) const {
    auto it = log_.find(addr);
    if (it == log_.end()) return 0;
    const auto& history = it->second;
    auto after = std::upper_bound(history.begin(), history.end(), tau,
                                  [](Timestamp t, const TimedWrite& w) { return t < w.time; });
    return after == history.begin() ? 0 : std::prev(after)->value;
  }

 private:
  M machine_;
  WriteLog log_;
  Timestamp updates_;
};

/// Runs updates 1..m in order. Update i writes at timestamp i; repeated
/// writes to a cell within one update keep only the last value.
template <CellMachine M>
PartialStore<M> record_partial(M machine, std::span<const typename M::Update> updates) {
  class Recorder final : public CellAccess {
   public:
    explicit Recorder(WriteLog& log) : log_(log) {}
    Timestamp now = 0;
    Word read(Address addr) override { return live_.read(addr); }
    void write(Address addr, Word value) override {
      live_.write(addr, value);
      auto& history = log_[addr];
      if (!history.empty() && history.back().time == now) {
        history.back().value = value;
      } else {
        history.push_back({now, value});
      }
    }

   private:
    FreshMemory live_;
    WriteLog& log_;
  };

  WriteLog log;
  Recorder recorder(log);
  for (const auto& u : updates) {
    ++recorder.now;
    machine.update(u, recorder);
  }
  return PartialStore<M>(std::move(machine), std::move(log), recorder.now);
}

template <CellMachine M>
typename M::Answer query_partial(const PartialStore<M>& store, const typename M::Query& q, Timestamp tau) {
  require(tau <= store.update_count(), "query_partial: timestamp beyond the last update");
  class Reader final : public CellReader {
   public:
    Reader(const PartialStore<M>& store, Timestamp tau) : store_(store), tau_(tau) {}
    Word read(Address addr) override { return store_.value_at(addr, tau_); }

   private:
    const PartialStore<M>& store_;
    Timestamp tau_;
  };
  Reader reader(store, tau);
  return store.machine().query(q, reader);
}

// --- version trees -----------------------------------------------------------

using VersionId = std::uint32_t;
inline constexpr VersionId kNoVersion = std::numeric_limits<VersionId>::max();

/// Rooted tree of versions; each node carries an ordered list of updates.
/// Node 0 is the root.
template <typename Update>
class VersionTree {
 public:
  struct Node {
    VersionId parent = kNoVersion;
    std::vector<VersionId> children;
    std::vector<Update> updates;
  };

  VersionTree() : nodes_(1) {}

  VersionId root() const { return 0; }
  std::size_t size() const { return nodes_.size(); }

  VersionId add_child(VersionId parent, std::vector<Update> updates = {}) {
    check(parent);
    const auto id = static_cast<VersionId>(nodes_.size());
    nodes_.push_back(Node{parent, {}, std::move(updates)});
    nodes_[parent].children.push_back(id);
    return id;
  }

  void append_update(VersionId v, Update u) {
    check(v);
    nodes_[v].updates.push_back(std::move(u));
  }

  const Node& node(VersionId v) const {
    check(v);
    return nodes_[v];
  }

  std::size_t total_updates() const {
    std::size_t total = 0;
    for (const Node& n : nodes_) total += n.updates.size();
    return total;
  }

  /// Updates on the root-to-v path, in execution order.
  std::vector<Update> path_updates(VersionId v) const {
    std::vector<VersionId> path;
    for (VersionId cur = v; cur != kNoVersion; cur = node(cur).parent) path.push_back(cur);
    std::vector<Update> out;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const auto& ups = nodes_[*it].updates;
      out.insert(out.end(), ups.begin(), ups.end());
    }
    return out;
  }

  void check(VersionId v) const { require(v < nodes_.size(), "unknown version node"); }

 private:
  std::vector<Node> nodes_;
};

template <CellMachine M>
class FullStore {
 public:
  using Tree = VersionTree<typename M::Update>;

  FullStore(M machine, Tree tree) : machine_(std::move(machine)), tree_(std::move(tree)) {}

  const M& machine() const { return machine_; }
  const Tree& tree() const { return tree_; }

  /// Value of `addr` at version v: the write at the deepest ancestor of v
  /// (v included) that wrote the cell.
  Word value_at(Address addr, VersionId v) const {
    auto it = cells_.find(addr);
    if (it == cells_.end()) return 0;
    for (VersionId cur = v; cur != kNoVersion; cur = tree_.node(cur).parent) {
      auto hit = it->second.find(cur);
      if (hit != it->second.end()) return hit->second;
    }
    return 0;
  }

  void set(Address addr, VersionId v, Word value) { cells_[addr][v] = value; }

  /// Number of (cell, version) records held.
  std::size_t record_count() const {
    std::size_t total = 0;
    for (const auto& [addr, per_version] : cells_) total += per_version.size();
    return total;
  }

  bool has_record(Address addr, VersionId v) const {
    auto it = cells_.find(addr);
    return it != cells_.end() && it->second.contains(v);
  }

 private:
  M machine_;
  Tree tree_;
  std::unordered_map<Address, std::unordered_map<VersionId, Word>> cells_;
};

/// Depth-first over the version tree. Inside node v, reads see v's own
/// earlier writes and then its ancestors'; siblings never see each other.
template <CellMachine M>
FullStore<M> record_full(M machine, VersionTree<typename M::Update> tree) {
  FullStore<M> store(std::move(machine), std::move(tree));

  class NodeView final : public CellAccess {
   public:
    NodeView(FullStore<M>& store, VersionId v) : store_(store), v_(v) {}
    Word read(Address addr) override { return store_.value_at(addr, v_); }
    void write(Address addr, Word value) override { store_.set(addr, v_, value); }

   private:
    FullStore<M>& store_;
    VersionId v_;
  };

  std::vector<VersionId> stack{store.tree().root()};
  while (!stack.empty()) {
    const VersionId v = stack.back();
    stack.pop_back();
    NodeView view(store, v);
    for (const auto& u : store.tree().node(v).updates) store.machine().update(u, view);
    const auto& children = store.tree().node(v).children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  return store;
}

template <CellMachine M>
typename M::Answer query_full(const FullStore<M>& store, const typename M::Query& q, VersionId v) {
  store.tree().check(v);
  class Reader final : public CellReader {
   public:
    Reader(const FullStore<M>& store, VersionId v) : store_(store), v_(v) {}
    Word read(Address addr) override { return store_.value_at(addr, v_); }

   private:
    const FullStore<M>& store_;
    VersionId v_;
  };
  Reader reader(store, v);
  return store.machine().query(q, reader);
}

// --- version tree text form ---------------------------------------------------
//
//   tree    := node
//   node    := "(" "[" [ update { ";" update } ] "]" { node } ")"
//   update  := machine-specific token without ';', ']', '(' or ')'
//
// Whitespace between tokens is ignored; node ids follow preorder.

template <typename Codec, typename Update>
void write_version_tree(std::ostream& out, const VersionTree<Update>& tree, const Codec& codec) {
  std::vector<std::pair<VersionId, bool>> stack{{tree.root(), false}};
  while (!stack.empty()) {
    auto [v, closing] = stack.back();
    stack.pop_back();
    if (closing) {
      out << ')';
      continue;
    }
    out << "([";
    const auto& node = tree.node(v);
    for (std::size_t i = 0; i < node.updates.size(); ++i) {
      if (i) out << ';';
      out << codec.format(node.updates[i]);
    }
    out << ']';
    stack.push_back({v, true});
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back({*it, false});
  }
}

template <typename Codec>
auto read_version_tree(std::istream& in, const Codec& codec) {
  using Update = decltype(codec.parse(std::string_view{}));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    require(pos < text.size() && text[pos] == c, std::string("version tree: expected '") + c + "'");
    ++pos;
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };

  VersionTree<Update> tree;
  // Each stack entry is a node whose "(" and update list were consumed.
  std::vector<VersionId> open;
  auto read_node_head = [&](VersionId v) {
    expect('(');
    expect('[');
    std::size_t close = text.find(']', pos);
    require(close != std::string::npos, "version tree: unterminated update list");
    std::string_view body(text.data() + pos, close - pos);
    pos = close + 1;
    if (!trim(body).empty()) {
      std::size_t start = 0;
      while (true) {
        std::size_t semi = body.find(';', start);
        std::string_view token = trim(body.substr(start, semi == std::string_view::npos ? body.npos : semi - start));
        tree.append_update(v, codec.parse(token));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
      }
    }
    open.push_back(v);
  };

  read_node_head(tree.root());
  while (!open.empty()) {
    skip_ws();
    require(pos < text.size(), "version tree: unexpected end of input");
    if (text[pos] == ')') {
      ++pos;
      open.pop_back();
    } else {
      read_node_head(tree.add_child(open.back()));
    }
  }
  skip_ws();
  require(pos == text.size(), "version tree: trailing characters");
  return tree;
}

// --- machines ------------------------------------------------------------------

/// A bank of counters; counter i lives at address i.
class CounterMachine {
 public:
  struct Update {
    enum class Kind : std::uint8_t { Increment, Add, Set };
    Kind kind = Kind::Increment;
    Address counter = 0;
    Word value = 0;
    friend bool operator==(const Update&, const Update&) = default;
  };
  using Query = Address;
  using Answer = Word;

  void update(const Update& u, CellAccess& memory) const {
    switch (u.kind) {
      case Update::Kind::Increment: memory.write(u.counter, memory.read(u.counter) + 1); break;
      case Update::Kind::Add: memory.write(u.counter, memory.read(u.counter) + u.value); break;
      case Update::Kind::Set: memory.write(u.counter, u.value); break;
    }
  }
  Answer query(const Query& counter, CellReader& memory) const { return memory.read(counter); }

  /// Text: "inc:i", "add:i:v", "set:i:v".
  struct Codec {
    std::string format(const Update& u) const;
    Update parse(std::string_view token) const;
  };
};

/// Marked ancestor over a complete b-ary tree of depth d, one mark cell per
/// node in breadth-first order. A query reads the d+1 cells on the path.
class MarkedAncestorMachine {
 public:
  using Update = MarkOp;
  using Query = Digits;  // a leaf
  using Answer = bool;

  MarkedAncestorMachine(std::uint32_t degree, std::uint32_t depth);

  std::uint32_t degree() const { return degree_; }
  std::uint32_t depth() const { return depth_; }
  std::uint64_t node_count() const { return node_count_; }
  Address node_address(const Digits& node) const;

  void update(const Update& u, CellAccess& memory) const;
  Answer query(const Query& leaf, CellReader& memory) const;

  /// Text: "m:<digits>" or "u:<digits>" (digits 0-9a-z, empty for the root).
  struct Codec {
    std::string format(const Update& u) const;
    Update parse(std::string_view token) const;
  };

 private:
  std::uint32_t degree_;
  std::uint32_t depth_;
  std::uint64_t node_count_;
};

// --- butterfly reachability as fully persistent marked ancestor ---------------

/// Update position for one butterfly edge: the version node that carries the
/// update (digit path, depth >= 1) and the marked-ancestor node it marks.
struct SlotRef {
  Digits version_path;
  Digits ma_node;
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

/// Edge (j, u, z) -> version node (u_0, ..., u_{j-1}, z) at depth j+1 and
/// marked-ancestor node (u_{d-1}, u_{d-2}, ..., u_j) at depth d-j.
SlotRef edge_to_slot(const ButterflyShape& shape, const EdgeRef& e);
EdgeRef slot_to_edge(const ButterflyShape& shape, const SlotRef& slot);

struct FpmaInput {
  ButterflyShape shape;
  VersionTree<MarkOp> tree;
  std::map<Digits, VersionId> version_of_path;  // complete b-ary tree, every depth

  VersionId version(const Digits& path) const;
};

/// Complete version tree of depth d; one mark update per missing edge.
FpmaInput build_fpma_input(const Subgraph& sub);

/// Reachability answered through the fully persistent marked-ancestor
/// simulation: query leaf reverse(source) at version sink.
bool reach_via_fpma(const FullStore<MarkedAncestorMachine>& store, const FpmaInput& input, const Digits& source,
                    const Digits& sink);
bool reach_via_fpma(const Subgraph& sub, const Digits& source, const Digits& sink);

/// Decremental marked ancestor via union-find. Starts fully marked; an
/// unmarked node is united with its parent, and the root with an extra
/// sentinel above it. A leaf has a marked ancestor iff it is not in the
/// sentinel's class.
class DecrementalMarkedAncestor {
 public:
  DecrementalMarkedAncestor(std::uint32_t degree, std::uint32_t depth);

  /// Throws InvalidInput on a second unmark of the same node.
  void unmark(const Digits& node);
  bool query(const Digits& leaf);

 private:
  MarkedAncestorMachine layout_;
  std::vector<bool> marked_;
  Dsu dsu_;
  std::size_t sentinel_;
};

}  // namespace lbx
