#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lbx {

/// Thrown for every input that violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

/// A digit vector in [b]^d. Coordinate 0 is the first entry.
using Digits = std::vector<std::uint32_t>;

/// b^e with overflow detection.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// C(n, k); throws InvalidInput when the value does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Number of bits needed to name one of `count` alternatives: ceil(lg count), 0 for count <= 1.
unsigned ceil_log2(std::uint64_t count);

/// Bits of `value`, most significant first, padded to `width`.
std::vector<bool> to_bits(std::uint64_t value, unsigned width);
std::uint64_t from_bits(const std::vector<bool>& bits);

std::string bits_to_string(const std::vector<bool>& bits);
std::vector<bool> bits_from_string(const std::string& text);

// Fixed-weight bit strings in lexicographic order ("0011" < "0101").
std::vector<bool> unrank_weighted_string(unsigned length, unsigned weight, std::uint64_t rank);
std::uint64_t rank_weighted_string(const std::vector<bool>& bits);

/// Rank of a sorted k-subset of [n] in the same lexicographic order as the
/// characteristic strings above.
std::uint64_t rank_subset(std::uint64_t n, std::span<const std::uint64_t> sorted_subset);
std::vector<std::uint64_t> unrank_subset(std::uint64_t n, std::uint64_t k, std::uint64_t rank);

/// Deterministic random source. The engine is mt19937_64 and bounded draws
/// use rejection sampling, so streams are identical on every platform
/// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent child stream: seeded with splitmix64(seed ^ splitmix64(stream + 1)).
  static Rng stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace lbx
