#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mfkc {

/// A single character value. In scalar mode this is a Unicode scalar value;
/// in byte mode it is the byte value 0..255.
using Symbol = char32_t;

/// What counts as one character.
enum class CharUnit : std::uint8_t {
  kScalar,  ///< UTF-8 decoded code points (default)
  kByte,    ///< raw bytes
};

constexpr char32_t kReplacementChar = 0xFFFD;

std::string_view to_string(CharUnit unit);
/// Accepts "scalar" and "byte". Throws ConfigError otherwise.
CharUnit parse_char_unit(std::string_view name);

namespace detail {

/// Decodes one UTF-8 scalar starting at text[pos] and advances pos.
/// Invalid or truncated sequences consume one byte and yield U+FFFD.
char32_t decode_utf8(std::string_view text, std::size_t& pos) noexcept;

}  // namespace detail

/// Calls fn(symbol) for each character of text under the given unit.
template <typename Fn>
void for_each_symbol(std::string_view text, CharUnit unit, Fn&& fn) {
  if (unit == CharUnit::kByte) {
    for (unsigned char c : text) fn(static_cast<Symbol>(c));
    return;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto c = static_cast<unsigned char>(text[pos]);
    if (c < 0x80) {
      ++pos;
      fn(static_cast<Symbol>(c));
    } else {
      fn(detail::decode_utf8(text, pos));
    }
  }
}

std::vector<Symbol> to_symbols(std::string_view text, CharUnit unit);

/// Number of characters in text under the given unit.
std::size_t symbol_length(std::string_view text, CharUnit unit);

/// Appends the textual form of a symbol: a raw byte in byte mode, UTF-8 in
/// scalar mode.
void append_symbol(std::string& out, Symbol symbol, CharUnit unit);

}  // namespace mfkc
