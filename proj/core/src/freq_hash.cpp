#include "mfkc/freq_hash.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <unordered_map>

#include "mfkc/error.hpp"

namespace mfkc {

namespace {

// Per-thread dense counters for symbols below 256 plus a hash map for the
// rest. Every use leaves the dense table zeroed again, so a tally costs
// O(length + distinct symbols) rather than O(table size).
class Tally {
 public:
  Tally(std::string_view text, CharUnit unit) : dense_(dense_table()) {
    std::size_t index = 0;
    for_each_symbol(text, unit, [&](Symbol s) {
      if (s < 256) {
        if (dense_[s]++ == 0) {
          first_[s] = index;
          order_[distinct_++] = static_cast<std::uint8_t>(s);
        }
      } else {
        auto [it, inserted] = wide_.try_emplace(s, SymbolFrequency{s, 0, index});
        ++it->second.count;
      }
      ++index;
    });
  }

  ~Tally() {
    for (std::size_t i = 0; i < distinct_; ++i) dense_[order_[i]] = 0;
  }

  Tally(const Tally&) = delete;
  Tally& operator=(const Tally&) = delete;

  // Appends every symbol's statistics, dense symbols in first-occurrence
  // order followed by the wide ones in unspecified order.
  template <typename Out>
  void collect(Out& out) const {
    for (std::size_t i = 0; i < distinct_; ++i) {
      const auto s = order_[i];
      out.push_back({static_cast<Symbol>(s), dense_[s], first_[s]});
    }
    for (const auto& [_, freq] : wide_) out.push_back(freq);
  }

  std::size_t distinct() const noexcept { return distinct_ + wide_.size(); }

 private:
  static std::array<std::uint64_t, 256>& dense_table() {
    thread_local std::array<std::uint64_t, 256> table{};
    return table;
  }

  std::array<std::uint64_t, 256>& dense_;
  std::array<std::size_t, 256> first_;  // valid where dense_ != 0
  std::array<std::uint8_t, 256> order_;
  std::size_t distinct_ = 0;
  std::unordered_map<Symbol, SymbolFrequency> wide_;
};

bool needs_escape(Symbol s) {
  return s == '\\' || (s >= '0' && s <= '9') || s == '\t' || s == '\n' ||
         s == '\r';
}

}  // namespace

const SymbolFrequency* FrequencyTable::find(Symbol symbol) const noexcept {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const auto& e) { return e.symbol == symbol; });
  return it == entries_.end() ? nullptr : &*it;
}

std::uint64_t FrequencyTable::total() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& e : entries_) sum += e.count;
  return sum;
}

FreqHash::FreqHash(std::vector<HashEntry> entries, CharUnit unit)
    : entries_(std::move(entries)), unit_(unit) {
  if (entries_.empty()) throw ConfigError("FreqHash needs k >= 1 entries");
  bool in_padding = false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.is_padding()) {
      if (e.count != 0) {
        throw ConfigError("padding entry " + std::to_string(i) +
                          " has nonzero count");
      }
      in_padding = true;
      continue;
    }
    if (in_padding) {
      throw ConfigError("real entry " + std::to_string(i) +
                        " follows padding");
    }
    if (e.count == 0) {
      throw ConfigError("real entry " + std::to_string(i) + " has count 0");
    }
    if (i > 0 && entries_[i - 1].count < e.count) {
      throw ConfigError("entry counts must be non-increasing");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[j].symbol == e.symbol) {
        throw ConfigError("duplicate symbol in entry " + std::to_string(i));
      }
    }
    ++real_size_;
  }
}

std::uint64_t FreqHash::total_count() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& e : entries_) sum += e.count;
  return sum;
}

FrequencyTable count_frequencies(std::string_view text, CharUnit unit) {
  std::vector<SymbolFrequency> out;
  {
    const Tally tally(text, unit);
    out.reserve(tally.distinct());
    tally.collect(out);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first_index < b.first_index;
  });
  return FrequencyTable(std::move(out));
}

FreqHash max_k_freq_hash(std::string_view text, std::size_t k,
                         CharUnit unit) {
  if (k == 0) throw ConfigError("k must be at least 1");
  std::vector<SymbolFrequency> freqs;
  {
    const Tally tally(text, unit);
    freqs.reserve(tally.distinct());
    tally.collect(freqs);
  }

  const auto take = std::min(k, freqs.size());
  std::partial_sort(freqs.begin(), freqs.begin() + take, freqs.end(),
                    [](const auto& a, const auto& b) {
                      if (a.count != b.count) return a.count > b.count;
                      return a.first_index < b.first_index;
                    });

  std::vector<HashEntry> entries;
  entries.reserve(k);
  for (std::size_t i = 0; i < take; ++i) {
    entries.push_back({freqs[i].symbol, freqs[i].count});
  }
  entries.resize(k, HashEntry::padding());
  return FreqHash(std::move(entries), unit);
}

std::string encode_hash(const FreqHash& hash) {
  std::string out;
  for (const auto& e : hash.entries()) {
    if (e.is_padding()) {
      out += "NULL0";
      continue;
    }
    const Symbol s = *e.symbol;
    if (needs_escape(s)) {
      out.push_back('\\');
      switch (s) {
        case '\t': out.push_back('t'); break;
        case '\n': out.push_back('n'); break;
        case '\r': out.push_back('r'); break;
        default: out.push_back(static_cast<char>(s));
      }
    } else {
      append_symbol(out, s, hash.unit());
    }
    out += std::to_string(e.count);
  }
  return out;
}

FreqHash decode_hash(std::string_view text, CharUnit unit) {
  constexpr std::string_view kNull = "NULL";
  std::vector<HashEntry> entries;
  std::size_t pos = 0;

  auto fail = [&](const std::string& why, std::size_t at) -> ParseError {
    return ParseError("hash text: " + why + " at offset " + std::to_string(at),
                      at);
  };
  auto is_digit = [&](std::size_t at) {
    return at < text.size() && text[at] >= '0' && text[at] <= '9';
  };

  if (text.empty()) throw fail("empty input", 0);

  while (pos < text.size()) {
    const std::size_t entry_start = pos;
    if (text.substr(pos, kNull.size()) == kNull) {
      pos += kNull.size();
      if (!is_digit(pos)) throw fail("NULL without count", pos);
      if (text[pos] != '0' || is_digit(pos + 1)) {
        throw fail("NULL padding must have count 0", pos);
      }
      ++pos;
      entries.push_back(HashEntry::padding());
      continue;
    }

    Symbol symbol = 0;
    if (is_digit(pos)) throw fail("count without symbol", pos);
    if (text[pos] == '\\') {
      if (pos + 1 >= text.size()) throw fail("dangling escape", pos);
      const char esc = text[pos + 1];
      switch (esc) {
        case 't': symbol = '\t'; break;
        case 'n': symbol = '\n'; break;
        case 'r': symbol = '\r'; break;
        default:
          if (esc == '\\' || (esc >= '0' && esc <= '9')) {
            symbol = static_cast<Symbol>(esc);
          } else {
            throw fail("unknown escape", pos);
          }
      }
      pos += 2;
    } else if (unit == CharUnit::kByte) {
      symbol = static_cast<unsigned char>(text[pos++]);
    } else {
      symbol = detail::decode_utf8(text, pos);
    }

    if (!is_digit(pos)) throw fail("symbol without count", pos);
    const std::size_t digits_start = pos;
    while (is_digit(pos)) ++pos;
    const auto digits = text.substr(digits_start, pos - digits_start);
    if (digits.size() > 1 && digits[0] == '0') {
      throw fail("count has leading zero", digits_start);
    }
    std::uint64_t count = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), count);
    if (ec != std::errc{}) throw fail("count out of range", digits_start);
    if (count == 0) throw fail("real symbol with count 0", digits_start);
    if (!entries.empty() && entries.back().is_padding()) {
      throw fail("padding before a real entry", entry_start);
    }
    if (!entries.empty() && entries.back().count < count) {
      throw fail("counts must be non-increasing", digits_start);
    }
    for (const auto& e : entries) {
      if (e.symbol == symbol) throw fail("duplicate symbol", entry_start);
    }
    entries.push_back({symbol, count});
  }
  return FreqHash(std::move(entries), unit);
}

}  // namespace mfkc
