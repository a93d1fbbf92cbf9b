#include "lbx/butterfly.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace lbx {

ButterflyShape::ButterflyShape(std::uint32_t degree, std::uint32_t depth) : degree_(degree), depth_(depth) {
  require(degree >= 2, "butterfly degree must be at least 2");
  require(depth >= 1, "butterfly depth must be at least 1");
  require(degree <= 36, "butterfly degree above 36 has no text digit form");
  width_ = ipow(degree, depth);
  // edge_count must stay representable as well.
  ipow(degree, depth + 1);
  require(width_ * degree <= (std::uint64_t{1} << 62) / depth, "butterfly too large");
}

void ButterflyShape::validate(const Digits& v) const {
  require(v.size() == depth_, "vector length differs from butterfly depth");
  for (std::uint32_t digit : v) require(digit < degree_, "digit out of range for butterfly degree");
}

Digits EdgeRef::head() const {
  Digits out = tail;
  out.at(level) = z;
  return out;
}

void validate_edge(const ButterflyShape& shape, const EdgeRef& e) {
  require(e.level < shape.depth(), "edge level out of range");
  shape.validate(e.tail);
  require(e.z < shape.degree(), "edge digit z out of range");
}

namespace {

std::uint64_t plain_index(const ButterflyShape& shape, const Digits& v) {
  std::uint64_t index = 0;
  for (std::uint32_t digit : v) index = index * shape.degree() + digit;
  return index;
}

Digits plain_digits(const ButterflyShape& shape, std::uint64_t index, std::size_t length) {
  Digits v(length);
  for (std::size_t i = length; i-- > 0;) {
    v[i] = static_cast<std::uint32_t>(index % shape.degree());
    index /= shape.degree();
  }
  return v;
}

}  // namespace

std::uint64_t edge_id(const ButterflyShape& shape, const EdgeRef& e) {
  validate_edge(shape, e);
  return (e.level * shape.width() + plain_index(shape, e.tail)) * shape.degree() + e.z;
}

EdgeRef edge_from_id(const ButterflyShape& shape, std::uint64_t id) {
  require(id < shape.edge_count(), "edge id out of range");
  EdgeRef e;
  e.z = static_cast<std::uint32_t>(id % shape.degree());
  id /= shape.degree();
  e.tail = plain_digits(shape, id % shape.width(), shape.depth());
  e.level = static_cast<std::uint32_t>(id / shape.width());
  return e;
}

std::vector<EdgeRef> all_edges(const ButterflyShape& shape) {
  std::vector<EdgeRef> out;
  out.reserve(shape.edge_count());
  for (std::uint64_t id = 0; id < shape.edge_count(); ++id) out.push_back(edge_from_id(shape, id));
  return out;
}

Subgraph::Subgraph(ButterflyShape shape, std::set<EdgeRef> missing) : shape_(shape), missing_(std::move(missing)) {
  for (const EdgeRef& e : missing_) validate_edge(shape_, e);
}

void Subgraph::remove_edge(const EdgeRef& e) {
  validate_edge(shape_, e);
  missing_.insert(e);
}

Subgraph subgraph_from_mask(const ButterflyShape& shape, std::uint64_t mask) {
  require(shape.edge_count() >= 64 || (mask >> shape.edge_count()) == 0, "mask has bits beyond the edge count");
  Subgraph sub(shape);
  for (std::uint64_t id = 0; id < shape.edge_count() && id < 64; ++id) {
    if ((mask >> id) & 1U) sub.remove_edge(edge_from_id(shape, id));
  }
  return sub;
}

Subgraph random_subgraph(const ButterflyShape& shape, Rng& rng, unsigned missing_per_mille) {
  Subgraph sub(shape);
  for (std::uint64_t id = 0; id < shape.edge_count(); ++id) {
    if (rng.below(1000) < missing_per_mille) sub.remove_edge(edge_from_id(shape, id));
  }
  return sub;
}

std::vector<EdgeRef> path_edges(const ButterflyShape& shape, const Digits& source, const Digits& sink) {
  shape.validate(source);
  shape.validate(sink);
  std::vector<EdgeRef> path;
  path.reserve(shape.depth());
  Digits current = source;
  for (std::uint32_t j = 0; j < shape.depth(); ++j) {
    path.push_back(EdgeRef{j, current, sink[j]});
    current[j] = sink[j];
  }
  return path;
}

bool reachable(const Subgraph& sub, const Digits& source, const Digits& sink) {
  for (const EdgeRef& e : path_edges(sub.shape(), source, sink)) {
    if (sub.is_missing(e)) return false;
  }
  return true;
}

std::uint64_t source_index(const ButterflyShape& shape, const Digits& v) {
  shape.validate(v);
  std::uint64_t index = 0;
  for (std::size_t i = v.size(); i-- > 0;) index = index * shape.degree() + v[i];
  return index;
}

std::uint64_t sink_index(const ButterflyShape& shape, const Digits& v) {
  shape.validate(v);
  return plain_index(shape, v);
}

Digits source_from_index(const ButterflyShape& shape, std::uint64_t index) {
  require(index < shape.width(), "source index out of range");
  Digits v(shape.depth());
  for (std::uint32_t i = 0; i < shape.depth(); ++i) {
    v[i] = static_cast<std::uint32_t>(index % shape.degree());
    index /= shape.degree();
  }
  return v;
}

Digits sink_from_index(const ButterflyShape& shape, std::uint64_t index) {
  require(index < shape.width(), "sink index out of range");
  return plain_digits(shape, index, shape.depth());
}

std::uint64_t microset_count(const ButterflyShape& shape) { return shape.non_sink_count() / shape.degree(); }

MicrosetId microset_from_index(const ButterflyShape& shape, std::uint64_t x) {
  require(x < microset_count(shape), "microset index out of range");
  const std::uint64_t per_level = shape.width() / shape.degree();
  return MicrosetId{static_cast<std::uint32_t>(x / per_level), plain_digits(shape, x % per_level, shape.depth() - 1)};
}

std::uint64_t microset_index(const ButterflyShape& shape, const MicrosetId& m) {
  require(m.level < shape.depth(), "microset level out of range");
  require(m.context.size() + 1 == shape.depth(), "microset context has the wrong length");
  for (std::uint32_t digit : m.context) require(digit < shape.degree(), "microset digit out of range");
  return m.level * (shape.width() / shape.degree()) + plain_index(shape, m.context);
}

NodeRef microset_node(const ButterflyShape& shape, const MicrosetId& m, std::uint32_t position) {
  microset_index(shape, m);
  require(position < shape.degree(), "microset position out of range");
  NodeRef node{m.level, {}};
  node.digits.reserve(shape.depth());
  for (std::uint32_t i = 0, c = 0; i < shape.depth(); ++i) {
    node.digits.push_back(i == m.level ? position : m.context[c++]);
  }
  return node;
}

MicrosetSlot microset_of(const ButterflyShape& shape, const NodeRef& node) {
  require(node.level < shape.depth(), "sinks belong to no microset");
  shape.validate(node.digits);
  MicrosetSlot slot;
  slot.microset.level = node.level;
  for (std::uint32_t i = 0; i < shape.depth(); ++i) {
    if (i != node.level) slot.microset.context.push_back(node.digits[i]);
  }
  slot.position = node.digits[node.level];
  return slot;
}

namespace {

char digit_char(std::uint32_t digit) {
  return static_cast<char>(digit < 10 ? '0' + digit : 'a' + (digit - 10));
}

std::uint32_t char_digit(char c) {
  if (c >= '0' && c <= '9') return static_cast<std::uint32_t>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<std::uint32_t>(c - 'a' + 10);
  throw InvalidInput(std::string("not a digit: ") + c);
}

}  // namespace

std::string format_edge(const ButterflyShape& shape, const EdgeRef& e) {
  validate_edge(shape, e);
  std::string out = std::to_string(e.level) + ":";
  for (std::uint32_t digit : e.tail) out.push_back(digit_char(digit));
  out += "->";
  out.push_back(digit_char(e.z));
  return out;
}

EdgeRef parse_edge(const ButterflyShape& shape, const std::string& line) {
  const auto colon = line.find(':');
  require(colon != std::string::npos && colon > 0, "edge line needs 'level:'");
  std::size_t arrow = line.find("->", colon);
  std::size_t arrow_len = 2;
  if (arrow == std::string::npos) {
    arrow = line.find("\xE2\x86\x92", colon);
    arrow_len = 3;
  }
  require(arrow != std::string::npos, "edge line needs an arrow");
  EdgeRef e;
  try {
    std::size_t used = 0;
    e.level = static_cast<std::uint32_t>(std::stoul(line.substr(0, colon), &used));
    require(used == colon, "bad edge level");
  } catch (const std::logic_error&) {
    throw InvalidInput("bad edge level in: " + line);
  }
  for (std::size_t i = colon + 1; i < arrow; ++i) e.tail.push_back(char_digit(line[i]));
  const std::string z = line.substr(arrow + arrow_len);
  require(z.size() == 1, "edge target digit must be a single character");
  e.z = char_digit(z[0]);
  validate_edge(shape, e);
  return e;
}

void write_subgraph(std::ostream& out, const Subgraph& sub) {
  out << sub.shape().degree() << ' ' << sub.shape().depth() << '\n';
  for (const EdgeRef& e : sub.missing()) out << format_edge(sub.shape(), e) << '\n';
}

Subgraph read_subgraph(std::istream& in) {
  std::optional<Subgraph> sub;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t");
    const auto last = line.find_last_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first, last - first + 1);
    if (!sub) {
      std::istringstream header(line);
      std::uint32_t b = 0;
      std::uint32_t d = 0;
      std::string extra;
      require(static_cast<bool>(header >> b >> d) && !(header >> extra), "subgraph file needs a 'b d' header");
      sub.emplace(ButterflyShape(b, d));
      continue;
    }
    sub->remove_edge(parse_edge(sub->shape(), line));
  }
  require(sub.has_value(), "subgraph file needs a 'b d' header");
  return std::move(*sub);
}

}  // namespace lbx
