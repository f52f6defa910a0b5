#include "mfkc/char_unit.hpp"

#include "mfkc/error.hpp"

namespace mfkc {

std::string_view to_string(CharUnit unit) {
  return unit == CharUnit::kByte ? "byte" : "scalar";
}

CharUnit parse_char_unit(std::string_view name) {
  if (name == "scalar") return CharUnit::kScalar;
  if (name == "byte") return CharUnit::kByte;
  throw ConfigError("unknown character unit '" + std::string(name) +
                    "' (expected scalar or byte)");
}

namespace detail {

char32_t decode_utf8(std::string_view text, std::size_t& pos) noexcept {
  const auto lead = static_cast<unsigned char>(text[pos]);
  std::size_t len = 0;
  char32_t value = 0;
  char32_t min_value = 0;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    len = 2;
    value = lead & 0x1F;
    min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    value = lead & 0x0F;
    min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    value = lead & 0x07;
    min_value = 0x10000;
  } else {
    ++pos;
    return kReplacementChar;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kReplacementChar;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const auto cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xC0) != 0x80) {
      ++pos;
      return kReplacementChar;
    }
    value = (value << 6) | (cont & 0x3F);
  }
  // overlong forms, surrogates and out-of-range values are not scalars
  if (value < min_value || value > 0x10FFFF ||
      (value >= 0xD800 && value <= 0xDFFF)) {
    ++pos;
    return kReplacementChar;
  }
  pos += len;
  return value;
}

}  // namespace detail

std::vector<Symbol> to_symbols(std::string_view text, CharUnit unit) {
  std::vector<Symbol> out;
  out.reserve(text.size());
  for_each_symbol(text, unit, [&](Symbol s) { out.push_back(s); });
  return out;
}

std::size_t symbol_length(std::string_view text, CharUnit unit) {
  if (unit == CharUnit::kByte) return text.size();
  std::size_t n = 0;
  for_each_symbol(text, unit, [&](Symbol) { ++n; });
  return n;
}

void append_symbol(std::string& out, Symbol symbol, CharUnit unit) {
  if (unit == CharUnit::kByte || symbol < 0x80) {
    out.push_back(static_cast<char>(symbol));
  } else if (symbol < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (symbol >> 6)));
    out.push_back(static_cast<char>(0x80 | (symbol & 0x3F)));
  } else if (symbol < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (symbol >> 12)));
    out.push_back(static_cast<char>(0x80 | ((symbol >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (symbol & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (symbol >> 18)));
    out.push_back(static_cast<char>(0x80 | ((symbol >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((symbol >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (symbol & 0x3F)));
  }
}

}  // namespace mfkc
