#include "mfkc/baselines.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mfkc/error.hpp"

namespace mfkc {

std::size_t levenshtein(std::span<const Symbol> a, std::span<const Symbol> b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();

  // row[j] holds the distance between a[0, i) and b[0, j)
  std::vector<std::uint32_t> prev(b.size() + 1);
  std::vector<std::uint32_t> curr(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0u);

  for (std::size_t i = 1; i <= a.size(); ++i) {
    curr[0] = static_cast<std::uint32_t>(i);
    const Symbol ai = a[i - 1];
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::uint32_t substitute = prev[j - 1] + (ai != b[j - 1] ? 1u : 0u);
      const std::uint32_t erase = prev[j] + 1;
      const std::uint32_t insert = curr[j - 1] + 1;
      curr[j] = std::min({substitute, erase, insert});
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b,
                        CharUnit unit) {
  const auto sa = to_symbols(a, unit);
  const auto sb = to_symbols(b, unit);
  return levenshtein(std::span<const Symbol>(sa), std::span<const Symbol>(sb));
}

HammingMode parse_hamming_mode(std::string_view name) {
  if (name == "min" || name == "min-length") return HammingMode::kMinLength;
  if (name == "padded") return HammingMode::kPadded;
  throw ConfigError("unknown hamming mode '" + std::string(name) +
                    "' (expected min-length or padded)");
}

std::size_t hamming(std::string_view a, std::string_view b, HammingMode mode,
                    CharUnit unit) {
  const auto sa = to_symbols(a, unit);
  const auto sb = to_symbols(b, unit);
  const std::size_t common = std::min(sa.size(), sb.size());
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < common; ++i) {
    if (sa[i] != sb[i]) ++mismatches;
  }
  if (mode == HammingMode::kPadded) {
    mismatches += std::max(sa.size(), sb.size()) - common;
  }
  return mismatches;
}

SetMode parse_set_mode(std::string_view name) {
  if (name == "char" || name == "chars" || name == "char-set") {
    return SetMode::kChars;
  }
  if (name == "bigram" || name == "bigrams" || name == "bigram-set") {
    return SetMode::kBigrams;
  }
  throw ConfigError("unknown set mode '" + std::string(name) +
                    "' (expected char or bigram)");
}

SymbolSet SymbolSet::from_text(std::string_view text, SetMode mode,
                               CharUnit unit) {
  std::vector<std::uint64_t> elements;
  if (mode == SetMode::kChars) {
    for_each_symbol(text, unit, [&](Symbol s) { elements.push_back(s); });
  } else {
    bool have_prev = false;
    Symbol prev = 0;
    for_each_symbol(text, unit, [&](Symbol s) {
      if (have_prev) {
        elements.push_back((static_cast<std::uint64_t>(prev) << 32) | s);
      }
      prev = s;
      have_prev = true;
    });
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  return SymbolSet(mode, std::move(elements));
}

double jaccard_index(const SymbolSet& a, const SymbolSet& b) {
  if (a.mode() != b.mode()) {
    throw ConfigError("cannot compare character and bigram sets");
  }
  if (a.empty() && b.empty()) return 1.0;
  const auto ea = a.elements();
  const auto eb = b.elements();
  std::size_t common = 0;
  auto i = ea.begin();
  auto j = eb.begin();
  while (i != ea.end() && j != eb.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t all = ea.size() + eb.size() - common;
  return static_cast<double>(common) / static_cast<double>(all);
}

namespace {

// Character-set Jaccard with a dense table for symbols below 256.
double jaccard_chars(std::string_view a, std::string_view b, CharUnit unit) {
  std::array<std::uint8_t, 256> seen{};  // bit 0: in a, bit 1: in b
  std::vector<Symbol> wide_a;
  std::vector<Symbol> wide_b;
  for_each_symbol(a, unit, [&](Symbol s) {
    if (s < 256) {
      seen[s] |= 1;
    } else {
      wide_a.push_back(s);
    }
  });
  for_each_symbol(b, unit, [&](Symbol s) {
    if (s < 256) {
      seen[s] |= 2;
    } else {
      wide_b.push_back(s);
    }
  });

  std::size_t common = 0;
  std::size_t all = 0;
  for (auto flags : seen) {
    common += flags == 3;
    all += flags != 0;
  }
  if (!wide_a.empty() || !wide_b.empty()) {
    auto normalize = [](std::vector<Symbol>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    normalize(wide_a);
    normalize(wide_b);
    std::vector<Symbol> both;
    std::set_intersection(wide_a.begin(), wide_a.end(), wide_b.begin(),
                          wide_b.end(), std::back_inserter(both));
    common += both.size();
    all += wide_a.size() + wide_b.size() - both.size();
  }
  if (all == 0) return 1.0;
  return static_cast<double>(common) / static_cast<double>(all);
}

}  // namespace

double jaccard_index(std::string_view a, std::string_view b, SetMode mode,
                     CharUnit unit) {
  if (mode == SetMode::kChars) return jaccard_chars(a, b, unit);
  return jaccard_index(SymbolSet::from_text(a, mode, unit),
                       SymbolSet::from_text(b, mode, unit));
}

double jaccard_distance(std::string_view a, std::string_view b, SetMode mode,
                        CharUnit unit) {
  return 1.0 - jaccard_index(a, b, mode, unit);
}

BitVector BitVector::from_bytes(std::string_view bytes) {
  BitVector v;
  v.bytes_.assign(bytes.begin(), bytes.end());
  v.length_ = bytes.size() * 8;
  return v;
}

BitVector BitVector::from_bits(std::string_view bits) {
  BitVector v;
  v.length_ = bits.size();
  v.bytes_.assign((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.bytes_[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    } else if (bits[i] != '0') {
      throw ParseError("bit string: expected 0 or 1 at offset " +
                           std::to_string(i),
                       i);
    }
  }
  return v;
}

BitVector BitVector::padded(std::size_t length) const {
  if (length < length_) throw ConfigError("cannot pad to a shorter length");
  BitVector v = *this;
  v.length_ = length;
  v.bytes_.resize((length + 7) / 8, 0);
  return v;
}

double tanimoto_similarity(const BitVector& x, const BitVector& y) {
  if (x.size() != y.size()) {
    throw ConfigError("tanimoto operands must have equal bit length");
  }
  std::size_t both = 0;
  std::size_t either = 0;
  const auto bx = x.bytes();
  const auto by = y.bytes();
  for (std::size_t i = 0; i < bx.size(); ++i) {
    both += static_cast<std::size_t>(std::popcount(
        static_cast<std::uint8_t>(bx[i] & by[i])));
    either += static_cast<std::size_t>(std::popcount(
        static_cast<std::uint8_t>(bx[i] | by[i])));
  }
  if (either == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

double tanimoto_distance(const BitVector& x, const BitVector& y) {
  const double s = tanimoto_similarity(x, y);
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(1.0 / s);
}

double tanimoto_similarity(std::string_view a, std::string_view b) {
  const std::size_t bits = std::max(a.size(), b.size()) * 8;
  return tanimoto_similarity(BitVector::from_bytes(a).padded(bits),
                             BitVector::from_bytes(b).padded(bits));
}

double tanimoto_distance(std::string_view a, std::string_view b) {
  const std::size_t bits = std::max(a.size(), b.size()) * 8;
  return tanimoto_distance(BitVector::from_bytes(a).padded(bits),
                           BitVector::from_bytes(b).padded(bits));
}

}  // namespace mfkc
