#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "mfkc/baselines.hpp"
#include "mfkc/error.hpp"

using namespace mfkc;

TEST_CASE("levenshtein examples") {
  CHECK(levenshtein("revolution", "evolution") == 1);
  CHECK(levenshtein("abc", "abc") == 0);
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("", "") == 0);
  CHECK(levenshtein("", "abcd") == 4);
  CHECK(levenshtein("abcd", "") == 4);
  CHECK(levenshtein("flaw", "lawn") == 2);
}

TEST_CASE("levenshtein counts characters in scalar mode") {
  CHECK(levenshtein("caf\xc3\xa9", "cafe") == 1);
  CHECK(levenshtein("caf\xc3\xa9", "cafe", CharUnit::kByte) == 2);
}

TEST_CASE("hamming examples") {
  CHECK(hamming("revolution", "evolution") == 9);
  CHECK(hamming("revolution", "evolution", HammingMode::kPadded) == 10);
  CHECK(hamming("night", "nacht") == 2);
  CHECK(hamming("x", "x") == 0);
  CHECK(hamming("x", "x", HammingMode::kPadded) == 0);
  CHECK(hamming("", "abc") == 0);
  CHECK(hamming("", "abc", HammingMode::kPadded) == 3);
}

TEST_CASE("mode names") {
  CHECK(parse_hamming_mode("min") == HammingMode::kMinLength);
  CHECK(parse_hamming_mode("min-length") == HammingMode::kMinLength);
  CHECK(parse_hamming_mode("padded") == HammingMode::kPadded);
  CHECK_THROWS_AS(parse_hamming_mode("max"), ConfigError);
  CHECK(parse_set_mode("chars") == SetMode::kChars);
  CHECK(parse_set_mode("bigrams") == SetMode::kBigrams);
  CHECK_THROWS_AS(parse_set_mode("trigrams"), ConfigError);
}

TEST_CASE("jaccard examples") {
  CHECK(jaccard_index("abc", "abc") == 1.0);
  CHECK(jaccard_distance("abc", "abc") == 0.0);
  CHECK(jaccard_index("abc", "abd") == 0.5);
  CHECK(jaccard_distance("abc", "abd") == 0.5);
  CHECK(jaccard_index("ab", "cd") == 0.0);
  CHECK(jaccard_distance("ab", "cd") == 1.0);
  CHECK(jaccard_index("", "") == 1.0);
  CHECK(jaccard_index("", "a") == 0.0);
}

TEST_CASE("jaccard bigrams") {
  // {ab, bc} vs {ab, bd}
  CHECK(jaccard_index("abc", "abd", SetMode::kBigrams) == doctest::Approx(1.0 / 3));
  // one-character strings have no bigrams
  CHECK(jaccard_index("a", "b", SetMode::kBigrams) == 1.0);
  CHECK(SymbolSet::from_text("aaaa", SetMode::kBigrams).size() == 1);
}

TEST_CASE("jaccard string path agrees with SymbolSet path on wide symbols") {
  const std::string a = "\xe6\x97\xa5\xe6\x9c\xac" "ab";
  const std::string b = "\xe6\x97\xa5" "b\xc3\xa9";
  const double direct = jaccard_index(a, b);
  const double via_sets = jaccard_index(SymbolSet::from_text(a, SetMode::kChars),
                                        SymbolSet::from_text(b, SetMode::kChars));
  CHECK(direct == via_sets);
  CHECK(direct == doctest::Approx(2.0 / 5));
}

TEST_CASE("jaccard rejects mixed set modes") {
  CHECK_THROWS_AS(jaccard_index(SymbolSet::from_text("ab", SetMode::kChars),
                                SymbolSet::from_text("ab", SetMode::kBigrams)),
                  ConfigError);
}

TEST_CASE("tanimoto examples") {
  const auto v1100 = BitVector::from_bits("1100");
  CHECK(tanimoto_similarity(v1100, v1100) == 1.0);
  CHECK(tanimoto_distance(v1100, v1100) == 0.0);

  const auto v1010 = BitVector::from_bits("1010");
  CHECK(tanimoto_similarity(v1100, v1010) == doctest::Approx(1.0 / 3));
  CHECK(tanimoto_distance(v1100, v1010) == doctest::Approx(std::log2(3.0)));
  CHECK(tanimoto_distance(v1100, v1010) == doctest::Approx(1.585).epsilon(1e-3));

  const auto v0011 = BitVector::from_bits("0011");
  CHECK(tanimoto_similarity(v1100, v0011) == 0.0);
  CHECK(tanimoto_distance(v1100, v0011) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("tanimoto length rules") {
  CHECK_THROWS_AS(tanimoto_similarity(BitVector::from_bits("1"),
                                      BitVector::from_bits("10")),
                  ConfigError);
  const auto zeros = BitVector::from_bits("000");
  CHECK(tanimoto_similarity(zeros, zeros) == 1.0);
  CHECK_THROWS_AS(BitVector::from_bits("10x"), ParseError);
}

TEST_CASE("BitVector layout is most significant bit first") {
  const auto v = BitVector::from_bytes("A");  // 0x41 = 01000001
  REQUIRE(v.size() == 8);
  CHECK_FALSE(v[0]);
  CHECK(v[1]);
  CHECK(v[7]);
  CHECK(v == BitVector::from_bits("01000001"));
  const auto p = BitVector::from_bits("101").padded(11);
  CHECK(p.size() == 11);
  CHECK(p == BitVector::from_bits("10100000000"));
}

TEST_CASE("tanimoto on strings pads the shorter with zero bytes") {
  // 'a' = 01100001 vs 'a' followed by 'a': padding adds nothing to either sum
  CHECK(tanimoto_similarity("a", "aa") == doctest::Approx(0.5));
  CHECK(tanimoto_similarity("", "") == 1.0);
  CHECK(tanimoto_distance("abc", "abc") == 0.0);
  // '@' = 01000000, '!' = 00100001
  CHECK(tanimoto_similarity("@", "!") == 0.0);
}
