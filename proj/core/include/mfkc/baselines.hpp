#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mfkc/char_unit.hpp"

namespace mfkc {

// Levenshtein -------------------------------------------------------------

/// Unit-cost edit distance (insert, delete, substitute). Two rolling rows,
/// so memory is O(min(|a|, |b|)).
std::size_t levenshtein(std::span<const Symbol> a, std::span<const Symbol> b);
std::size_t levenshtein(std::string_view a, std::string_view b,
                        CharUnit unit = CharUnit::kScalar);

// Hamming -----------------------------------------------------------------

enum class HammingMode : std::uint8_t {
  kMinLength,  ///< compare the common prefix length only
  kPadded,     ///< common prefix mismatches plus the length difference
};

HammingMode parse_hamming_mode(std::string_view name);

std::size_t hamming(std::string_view a, std::string_view b,
                    HammingMode mode = HammingMode::kMinLength,
                    CharUnit unit = CharUnit::kScalar);

// Jaccard -----------------------------------------------------------------

enum class SetMode : std::uint8_t {
  kChars,    ///< distinct characters
  kBigrams,  ///< distinct adjacent character pairs
};

SetMode parse_set_mode(std::string_view name);

/// Distinct characters or character bigrams of a string. Bigrams are packed
/// as (first << 32) | second.
class SymbolSet {
 public:
  static SymbolSet from_text(std::string_view text, SetMode mode,
                             CharUnit unit = CharUnit::kScalar);

  SetMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  /// Sorted, unique.
  std::span<const std::uint64_t> elements() const noexcept {
    return elements_;
  }

  friend bool operator==(const SymbolSet&, const SymbolSet&) = default;

 private:
  SymbolSet(SetMode mode, std::vector<std::uint64_t> elements)
      : mode_(mode), elements_(std::move(elements)) {}

  SetMode mode_;
  std::vector<std::uint64_t> elements_;
};

/// |A ∩ B| / |A ∪ B|; 1 when both sets are empty.
double jaccard_index(const SymbolSet& a, const SymbolSet& b);
double jaccard_index(std::string_view a, std::string_view b,
                     SetMode mode = SetMode::kChars,
                     CharUnit unit = CharUnit::kScalar);
double jaccard_distance(std::string_view a, std::string_view b,
                        SetMode mode = SetMode::kChars,
                        CharUnit unit = CharUnit::kScalar);

// Tanimoto ----------------------------------------------------------------

/// Packed bit sequence, most significant bit of each byte first.
class BitVector {
 public:
  BitVector() = default;

  /// Eight bits per byte of text.
  static BitVector from_bytes(std::string_view bytes);
  /// Parses a string of '0'/'1' characters. Throws ParseError otherwise.
  static BitVector from_bits(std::string_view bits);

  std::size_t size() const noexcept { return length_; }
  bool operator[](std::size_t i) const noexcept {
    return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
  }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  /// Copy zero-extended to `length` bits (length >= size()).
  BitVector padded(std::size_t length) const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::vector<std::uint8_t> bytes_;  // bits past length_ are zero
  std::size_t length_ = 0;
};

/// Σ(x∧y) / Σ(x∨y); 1 for two all-zero vectors. Throws ConfigError when the
/// lengths differ.
double tanimoto_similarity(const BitVector& x, const BitVector& y);
/// -log2(similarity); +infinity when similarity is 0.
double tanimoto_distance(const BitVector& x, const BitVector& y);

/// String forms zero-pad the shorter byte string before comparing.
double tanimoto_similarity(std::string_view a, std::string_view b);
double tanimoto_distance(std::string_view a, std::string_view b);

}  // namespace mfkc
