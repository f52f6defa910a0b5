#include <doctest.h>

#include <string>
#include <vector>

#include "mfkc/error.hpp"
#include "mfkc/freq_hash.hpp"

using namespace mfkc;

namespace {

std::string h(std::string_view text, std::size_t k = 2) {
  return encode_hash(max_k_freq_hash(text, k));
}

std::size_t parse_error_offset(std::string_view text) {
  try {
    decode_hash(text);
  } catch (const ParseError& e) {
    return e.offset();
  }
  FAIL("no ParseError for '" << std::string(text) << "'");
  return 0;
}

}  // namespace

TEST_CASE("count_frequencies") {
  CHECK(count_frequencies("").empty());

  const auto research = count_frequencies("research");
  const std::vector<SymbolFrequency> expected{
      {U'r', 2, 0}, {U'e', 2, 1}, {U's', 1, 2},
      {U'a', 1, 4}, {U'c', 1, 6}, {U'h', 1, 7}};
  CHECK(research == FrequencyTable(expected));
  CHECK(research.total() == 8);
  REQUIRE(research.find(U'c') != nullptr);
  CHECK(research.find(U'c')->first_index == 6);
  CHECK(research.find(U'z') == nullptr);

  const auto ab = count_frequencies("aaaaabbbb");
  CHECK(ab == FrequencyTable({{U'a', 5, 0}, {U'b', 4, 5}}));
}

TEST_CASE("first_index counts characters, not bytes") {
  const auto t = count_frequencies("\xc3\xa9x", CharUnit::kScalar);
  REQUIRE(t.find(U'x') != nullptr);
  CHECK(t.find(U'x')->first_index == 1);
  const auto b = count_frequencies("\xc3\xa9x", CharUnit::kByte);
  CHECK(b.find(U'x')->first_index == 2);
}

TEST_CASE("max_k_freq_hash examples") {
  CHECK(h("research") == "r2e2");
  CHECK(h("seeking") == "e2s1");
  CHECK(h("a") == "a1NULL0");
  CHECK(h("night") == "n1i1");
  CHECK(h("", 3) == "NULL0NULL0NULL0");

  const auto empty = max_k_freq_hash("", 3);
  CHECK(empty.k() == 3);
  CHECK(empty.real_size() == 0);
  for (const auto& e : empty.entries()) CHECK(e.is_padding());
}

TEST_CASE("ties go to the earlier first occurrence") {
  CHECK(h("nacht") == "n1a1");
  CHECK(h("ba") == "b1a1");
  CHECK(h("abab") == "a2b2");
  CHECK(h("babab") == "b3a2");
  CHECK(h("xyzzy", 3) == "y2z2x1");
}

TEST_CASE("k larger than the alphabet pads, k = 0 is rejected") {
  CHECK(h("aab", 4) == "a2b1NULL0NULL0");
  CHECK_THROWS_AS(max_k_freq_hash("abc", 0), ConfigError);
}

TEST_CASE("symbols beyond Latin-1 take the general path") {
  const std::string text = "\xe6\x97\xa5\xe6\x9c\xac\xe6\x97\xa5" "a";  // 日本日a
  const auto hash = max_k_freq_hash(text, 2);
  CHECK(hash[0] == HashEntry{U'日', 2});
  CHECK(hash[1] == HashEntry{U'本', 1});
  CHECK(encode_hash(hash) == "\xe6\x97\xa5" "2" "\xe6\x9c\xac" "1");
}

TEST_CASE("repeated calls do not leak counts") {
  for (int i = 0; i < 3; ++i) CHECK(h("zzq") == "z2q1");
  CHECK(h("q") == "q1NULL0");
}

TEST_CASE("FreqHash constructor enforces structure") {
  using E = HashEntry;
  CHECK_NOTHROW(FreqHash({E{U'a', 2}, E{U'b', 2}}));
  CHECK_NOTHROW(FreqHash({E{U'a', 1}, E::padding()}));
  CHECK_THROWS_AS(FreqHash(std::vector<E>{}), ConfigError);
  CHECK_THROWS_AS(FreqHash({E::padding(), E{U'a', 1}}), ConfigError);
  CHECK_THROWS_AS(FreqHash({E{U'a', 0}}), ConfigError);
  CHECK_THROWS_AS(FreqHash({E{std::nullopt, 3}}), ConfigError);
  CHECK_THROWS_AS(FreqHash({E{U'a', 1}, E{U'b', 2}}), ConfigError);
  CHECK_THROWS_AS(FreqHash({E{U'a', 2}, E{U'a', 1}}), ConfigError);
  CHECK(FreqHash({E{U'a', 3}, E{U'b', 1}}).total_count() == 4);
}

TEST_CASE("encode_hash examples") {
  using E = HashEntry;
  CHECK(encode_hash(FreqHash({E{U'r', 2}, E{U'e', 2}})) == "r2e2");
  CHECK(encode_hash(FreqHash({E{U'a', 1}, E::padding()})) == "a1NULL0");
  CHECK(encode_hash(FreqHash({E{U'L', 9}, E{U'T', 8}})) == "L9T8");
}

TEST_CASE("encode escapes digits, backslash and line breaks") {
  CHECK(h("77a") == "\\72a1");
  CHECK(h("\\\\x") == "\\\\2x1");
  CHECK(h("\t\t\n") == "\\t2\\n1");
  CHECK(h("\r") == "\\r1NULL0");
  CHECK(h("  x") == " 2x1");
}

TEST_CASE("decode_hash examples") {
  using E = HashEntry;
  CHECK(decode_hash("r2e2") == FreqHash({E{U'r', 2}, E{U'e', 2}}));
  CHECK(decode_hash("a1NULL0") == FreqHash({E{U'a', 1}, E::padding()}));
  CHECK(decode_hash("L9T8") == FreqHash({E{U'L', 9}, E{U'T', 8}}));
  CHECK(decode_hash("\\72a1") == max_k_freq_hash("77a", 2));
  CHECK(decode_hash("x120") == FreqHash({E{U'x', 120}}));
  CHECK(decode_hash("N3NULL0") == FreqHash({E{U'N', 3}, E::padding()}));
  CHECK(decode_hash("\xc3" "2" "\xa9" "1", CharUnit::kByte) ==
        max_k_freq_hash("\xc3\xa9\xc3", 2, CharUnit::kByte));
}

TEST_CASE("decode_hash errors name the offset") {
  CHECK_THROWS_AS(decode_hash("2r"), ParseError);
  CHECK(parse_error_offset("2r") == 0);
  CHECK(parse_error_offset("") == 0);
  CHECK(parse_error_offset("r2e") == 3);           // symbol without count
  CHECK(parse_error_offset("NULL0a1") == 5);       // padding before real
  CHECK(parse_error_offset("a0") == 1);            // real count 0
  CHECK(parse_error_offset("a1NULL1") == 6);       // padding with count
  CHECK(parse_error_offset("a1NULL") == 6);        // padding without count
  CHECK(parse_error_offset("a1b2") == 3);          // increasing counts
  CHECK(parse_error_offset("a2a1") == 2);          // duplicate symbol
  CHECK(parse_error_offset("a01") == 1);           // leading zero
  CHECK(parse_error_offset("\\q1") == 0);          // unknown escape
  CHECK(parse_error_offset("a1\\") == 2);          // dangling escape
  CHECK(parse_error_offset("a99999999999999999999999") == 1);
}
