#include "lbx/persistence.hpp"

#include <charconv>

namespace lbx {

namespace {

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size(), "expected an unsigned integer: " + std::string(text));
  return value;
}

char digit_char(std::uint32_t digit) {
  return static_cast<char>(digit < 10 ? '0' + digit : 'a' + (digit - 10));
}

std::uint32_t char_digit(char c) {
  if (c >= '0' && c <= '9') return static_cast<std::uint32_t>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<std::uint32_t>(c - 'a' + 10);
  throw InvalidInput(std::string("not a digit: ") + c);
}

}  // namespace

std::string CounterMachine::Codec::format(const Update& u) const {
  switch (u.kind) {
    case Update::Kind::Increment: return "inc:" + std::to_string(u.counter);
    case Update::Kind::Add: return "add:" + std::to_string(u.counter) + ":" + std::to_string(u.value);
    case Update::Kind::Set: return "set:" + std::to_string(u.counter) + ":" + std::to_string(u.value);
  }
  return {};
}

CounterMachine::Update CounterMachine::Codec::parse(std::string_view token) const {
  const auto first = token.find(':');
  require(first != std::string_view::npos, "counter update needs 'op:counter'");
  const std::string_view op = token.substr(0, first);
  const std::string_view rest = token.substr(first + 1);
  Update u;
  if (op == "inc") {
    u.kind = Update::Kind::Increment;
    u.counter = parse_u64(rest);
    return u;
  }
  require(op == "add" || op == "set", "unknown counter update: " + std::string(op));
  u.kind = op == "add" ? Update::Kind::Add : Update::Kind::Set;
  const auto second = rest.find(':');
  require(second != std::string_view::npos, "counter update needs a value");
  u.counter = parse_u64(rest.substr(0, second));
  u.value = parse_u64(rest.substr(second + 1));
  return u;
}

MarkedAncestorMachine::MarkedAncestorMachine(std::uint32_t degree, std::uint32_t depth)
    : degree_(degree), depth_(depth) {
  require(degree >= 2 && depth >= 1, "marked ancestor tree needs degree >= 2 and depth >= 1");
  node_count_ = (ipow(degree, depth + 1) - 1) / (degree - 1);
}

Address MarkedAncestorMachine::node_address(const Digits& node) const {
  require(node.size() <= depth_, "marked ancestor node deeper than the tree");
  std::uint64_t level_offset = 0;
  std::uint64_t level_size = 1;
  std::uint64_t index = 0;
  for (std::uint32_t digit : node) {
    require(digit < degree_, "marked ancestor digit out of range");
    level_offset += level_size;
    level_size *= degree_;
    index = index * degree_ + digit;
  }
  return level_offset + index;
}

void MarkedAncestorMachine::update(const Update& u, CellAccess& memory) const {
  memory.write(node_address(u.node), u.kind == MarkOpKind::Mark ? 1 : 0);
}

bool MarkedAncestorMachine::query(const Query& leaf, CellReader& memory) const {
  require(leaf.size() == depth_, "marked ancestor query must name a leaf");
  Digits prefix;
  prefix.reserve(depth_);
  bool found = memory.read(node_address(prefix)) != 0;
  for (std::uint32_t digit : leaf) {
    prefix.push_back(digit);
    // Every cell on the path is probed, matching the d+1 reads of the naive structure.
    found = (memory.read(node_address(prefix)) != 0) || found;
  }
  return found;
}

std::string MarkedAncestorMachine::Codec::format(const Update& u) const {
  std::string out = u.kind == MarkOpKind::Mark ? "m:" : "u:";
  for (std::uint32_t digit : u.node) out.push_back(digit_char(digit));
  return out;
}

MarkedAncestorMachine::Update MarkedAncestorMachine::Codec::parse(std::string_view token) const {
  require(token.size() >= 2 && token[1] == ':' && (token[0] == 'm' || token[0] == 'u'),
          "marked ancestor update must look like m:<digits> or u:<digits>");
  Update u;
  u.kind = token[0] == 'm' ? MarkOpKind::Mark : MarkOpKind::Unmark;
  for (char c : token.substr(2)) u.node.push_back(char_digit(c));
  return u;
}

SlotRef edge_to_slot(const ButterflyShape& shape, const EdgeRef& e) {
  validate_edge(shape, e);
  SlotRef slot;
  slot.version_path.assign(e.tail.begin(), e.tail.begin() + e.level);
  slot.version_path.push_back(e.z);
  for (std::uint32_t i = shape.depth(); i-- > e.level;) slot.ma_node.push_back(e.tail[i]);
  return slot;
}

EdgeRef slot_to_edge(const ButterflyShape& shape, const SlotRef& slot) {
  const std::uint32_t d = shape.depth();
  require(!slot.version_path.empty() && slot.version_path.size() <= d, "slot version depth must be in 1..d");
  const auto level = static_cast<std::uint32_t>(slot.version_path.size() - 1);
  require(slot.ma_node.size() == d - level, "slot marked-ancestor depth must be d - level");
  EdgeRef e;
  e.level = level;
  e.tail.resize(d);
  for (std::uint32_t i = 0; i < level; ++i) e.tail[i] = slot.version_path[i];
  for (std::uint32_t i = 0; i < d - level; ++i) e.tail[d - 1 - i] = slot.ma_node[i];
  e.z = slot.version_path[level];
  validate_edge(shape, e);
  return e;
}

VersionId FpmaInput::version(const Digits& path) const {
  auto it = version_of_path.find(path);
  require(it != version_of_path.end(), "no version node for this path");
  return it->second;
}

FpmaInput build_fpma_input(const Subgraph& sub) {
  const ButterflyShape& shape = sub.shape();
  FpmaInput input{shape, {}, {}};
  input.version_of_path[{}] = input.tree.root();
  // Breadth-first so node ids grow with depth.
  std::vector<Digits> frontier{{}};
  for (std::uint32_t depth = 0; depth < shape.depth(); ++depth) {
    std::vector<Digits> next;
    for (const Digits& path : frontier) {
      const VersionId parent = input.version_of_path.at(path);
      for (std::uint32_t digit = 0; digit < shape.degree(); ++digit) {
        Digits child = path;
        child.push_back(digit);
        input.version_of_path[child] = input.tree.add_child(parent);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  for (const EdgeRef& e : sub.missing()) {
    SlotRef slot = edge_to_slot(shape, e);
    input.tree.append_update(input.version(slot.version_path), MarkOp{MarkOpKind::Mark, slot.ma_node});
  }
  return input;
}

bool reach_via_fpma(const FullStore<MarkedAncestorMachine>& store, const FpmaInput& input, const Digits& source,
                    const Digits& sink) {
  input.shape.validate(source);
  input.shape.validate(sink);
  const Digits leaf(source.rbegin(), source.rend());
  return !query_full(store, leaf, input.version(sink));
}

bool reach_via_fpma(const Subgraph& sub, const Digits& source, const Digits& sink) {
  FpmaInput input = build_fpma_input(sub);
  auto store = record_full(MarkedAncestorMachine(sub.shape().degree(), sub.shape().depth()), input.tree);
  return reach_via_fpma(store, input, source, sink);
}

DecrementalMarkedAncestor::DecrementalMarkedAncestor(std::uint32_t degree, std::uint32_t depth)
    : layout_(degree, depth),
      marked_(layout_.node_count(), true),
      dsu_(layout_.node_count() + 1),
      sentinel_(layout_.node_count()) {}

void DecrementalMarkedAncestor::unmark(const Digits& node) {
  const Address id = layout_.node_address(node);
  require(marked_[id], "decremental marked ancestor: node already unmarked");
  marked_[id] = false;
  if (node.empty()) {
    dsu_.unite(id, sentinel_);
  } else {
    const Digits parent(node.begin(), node.end() - 1);
    dsu_.unite(id, layout_.node_address(parent));
  }
}

bool DecrementalMarkedAncestor::query(const Digits& leaf) {
  require(leaf.size() == layout_.depth(), "decremental marked ancestor query must name a leaf");
  return dsu_.find(sentinel_) != dsu_.find(layout_.node_address(leaf));
}

}  // namespace lbx
