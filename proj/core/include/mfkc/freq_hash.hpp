#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfkc/char_unit.hpp"

namespace mfkc {

/// Occurrence statistics of one symbol within a string.
struct SymbolFrequency {
  Symbol symbol = 0;
  std::uint64_t count = 0;
  std::size_t first_index = 0;  ///< 0-based, in character units

  friend bool operator==(const SymbolFrequency&,
                         const SymbolFrequency&) = default;
};

/// Per-symbol counts of a string, iterated in order of first occurrence.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  explicit FrequencyTable(std::vector<SymbolFrequency> entries)
      : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  std::span<const SymbolFrequency> entries() const noexcept {
    return entries_;
  }

  /// nullptr when the symbol does not occur.
  const SymbolFrequency* find(Symbol symbol) const noexcept;
  std::uint64_t total() const noexcept;

  friend bool operator==(const FrequencyTable&,
                         const FrequencyTable&) = default;

 private:
  std::vector<SymbolFrequency> entries_;
};

/// One (symbol, count) slot of a FreqHash. A missing symbol is the NULL
/// padding entry and always has count 0.
struct HashEntry {
  std::optional<Symbol> symbol;
  std::uint64_t count = 0;

  static HashEntry padding() noexcept { return {}; }
  bool is_padding() const noexcept { return !symbol.has_value(); }

  friend bool operator==(const HashEntry&, const HashEntry&) = default;
};

/// The most-frequent-K-characters digest of a string: exactly k entries,
/// real ones first by descending count (ties by first occurrence), then
/// NULL padding.
///
/// The constructor enforces every structural invariant that can be checked
/// without the source string and throws ConfigError on violation. The
/// first-occurrence tie order is guaranteed only by max_k_freq_hash.
class FreqHash {
 public:
  explicit FreqHash(std::vector<HashEntry> entries,
                    CharUnit unit = CharUnit::kScalar);

  std::size_t k() const noexcept { return entries_.size(); }
  CharUnit unit() const noexcept { return unit_; }
  std::span<const HashEntry> entries() const noexcept { return entries_; }
  const HashEntry& operator[](std::size_t i) const { return entries_[i]; }

  /// Number of non-padding entries.
  std::size_t real_size() const noexcept { return real_size_; }
  /// Sum of the real entries' counts.
  std::uint64_t total_count() const noexcept;

  friend bool operator==(const FreqHash&, const FreqHash&) = default;

 private:
  std::vector<HashEntry> entries_;
  CharUnit unit_ = CharUnit::kScalar;
  std::size_t real_size_ = 0;
};

/// Counts every symbol of text. Sum of counts equals the character length.
FrequencyTable count_frequencies(std::string_view text,
                                 CharUnit unit = CharUnit::kScalar);

/// The k most frequent symbols of text with their counts. Equal counts are
/// ordered by first occurrence; missing slots are NULL padding.
/// Throws ConfigError when k == 0.
FreqHash max_k_freq_hash(std::string_view text, std::size_t k,
                         CharUnit unit = CharUnit::kScalar);

/// Text form: symbol followed by its decimal count for each entry, padding
/// as "NULL0". Backslash, digits, tab, LF and CR symbols are escaped with a
/// leading backslash (tab/LF/CR as \t, \n, \r) so the form stays decodable
/// and TSV-safe.
std::string encode_hash(const FreqHash& hash);

/// Inverse of encode_hash. Throws ParseError carrying the byte offset of
/// the first offending character.
FreqHash decode_hash(std::string_view text,
                     CharUnit unit = CharUnit::kScalar);

}  // namespace mfkc
