#include "lbx/common.hpp"

#include <limits>

namespace lbx {

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    require(base == 0 || result <= std::numeric_limits<std::uint64_t>::max() / base,
            "ipow: overflow");
    result *= base;
  }
  return result;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step.
    acc = acc * (n - k + i) / i;
    require(acc <= std::numeric_limits<std::uint64_t>::max(), "binomial: overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

unsigned ceil_log2(std::uint64_t count) {
  unsigned bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < count) ++bits;
  return bits;
}

std::vector<bool> to_bits(std::uint64_t value, unsigned width) {
  require(width >= 64 || (value >> width) == 0, "to_bits: value does not fit in width");
  std::vector<bool> out(width);
  for (unsigned i = 0; i < width; ++i) out[width - 1 - i] = ((value >> i) & 1U) != 0;
  return out;
}

std::uint64_t from_bits(const std::vector<bool>& bits) {
  require(bits.size() <= 64, "from_bits: more than 64 bits");
  std::uint64_t value = 0;
  for (bool bit : bits) value = (value << 1) | (bit ? 1U : 0U);
  return value;
}

std::string bits_to_string(const std::vector<bool>& bits) {
  std::string out;
  out.reserve(bits.size());
  for (bool bit : bits) out.push_back(bit ? '1' : '0');
  return out;
}

std::vector<bool> bits_from_string(const std::string& text) {
  std::vector<bool> out;
  out.reserve(text.size());
  for (char c : text) {
    require(c == '0' || c == '1', "bit string may contain only 0 and 1");
    out.push_back(c == '1');
  }
  return out;
}

std::vector<bool> unrank_weighted_string(unsigned length, unsigned weight, std::uint64_t rank) {
  require(weight <= length, "unrank: weight exceeds length");
  require(rank < binomial(length, weight), "unrank: rank out of range");
  std::vector<bool> out(length, false);
  unsigned ones_left = weight;
  for (unsigned pos = 0; pos < length; ++pos) {
    if (ones_left == 0) break;
    // Strings with a 0 here come first.
    std::uint64_t with_zero = binomial(length - pos - 1, ones_left);
    if (rank < with_zero) continue;
    rank -= with_zero;
    out[pos] = true;
    --ones_left;
  }
  return out;
}

std::uint64_t rank_weighted_string(const std::vector<bool>& bits) {
  unsigned ones_left = 0;
  for (bool bit : bits) ones_left += bit ? 1U : 0U;
  std::uint64_t rank = 0;
  const auto length = static_cast<unsigned>(bits.size());
  for (unsigned pos = 0; pos < length && ones_left > 0; ++pos) {
    if (!bits[pos]) continue;
    rank += binomial(length - pos - 1, ones_left);
    --ones_left;
  }
  return rank;
}

std::uint64_t rank_subset(std::uint64_t n, std::span<const std::uint64_t> sorted_subset) {
  const std::uint64_t k = sorted_subset.size();
  std::uint64_t rank = 0;
  std::uint64_t ones_left = k;
  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t pos = sorted_subset[i];
    require(pos < n, "rank_subset: element out of range");
    require(i == 0 || sorted_subset[i - 1] < pos, "rank_subset: subset must be strictly increasing");
    rank += binomial(n - pos - 1, ones_left);
    --ones_left;
  }
  return rank;
}

std::vector<std::uint64_t> unrank_subset(std::uint64_t n, std::uint64_t k, std::uint64_t rank) {
  require(k <= n, "unrank_subset: k exceeds n");
  require(rank < binomial(n, k), "unrank_subset: rank out of range");
  std::vector<std::uint64_t> out;
  out.reserve(k);
  std::uint64_t ones_left = k;
  for (std::uint64_t pos = 0; pos < n && ones_left > 0; ++pos) {
    std::uint64_t with_zero = binomial(n - pos - 1, ones_left);
    if (rank < with_zero) continue;
    rank -= with_zero;
    out.push_back(pos);
    --ones_left;
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(seed ^ splitmix64(stream + 1)));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  require(bound > 0, "Rng::below: bound must be positive");
  // Largest multiple of bound that fits; reject draws above it.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

}  // namespace lbx
