#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "mfkc/char_unit.hpp"
#include "mfkc/freq_hash.hpp"

namespace mfkc {

/// How matched hash entries contribute to the similarity.
enum class Variant : std::uint8_t {
  kSumMatch,    ///< count1 + count2 for each shared symbol
  kMinOverlap,  ///< min(count1, count2) for each shared symbol
};

std::string_view to_string(Variant variant);
/// Accepts "sum"/"summatch" and "min"/"minoverlap" (case-sensitive).
Variant parse_variant(std::string_view name);

struct DistanceSpec {
  std::size_t k = 2;
  double limit = 10.0;
  Variant variant = Variant::kSumMatch;
  bool clamp = true;
  CharUnit unit = CharUnit::kScalar;

  /// Throws ConfigError unless k >= 1 and limit > 0.
  void validate() const;

  friend bool operator==(const DistanceSpec&, const DistanceSpec&) = default;
};

struct MfkcResult {
  double distance = 0.0;
  double similarity = 0.0;
  /// True when clamping was enabled and pulled a negative distance up to 0.
  bool clamped = false;

  friend bool operator==(const MfkcResult&, const MfkcResult&) = default;
};

/// Sum over pairs of equal real symbols. Padding never matches.
/// Throws ConfigError when the hashes differ in k or character unit.
double mfkc_similarity(const FreqHash& a, const FreqHash& b, Variant variant);

/// limit - similarity, floored at 0 when spec.clamp is set.
MfkcResult mfkc_distance(const FreqHash& a, const FreqHash& b,
                         const DistanceSpec& spec);

/// Hashes both strings with spec.k / spec.unit, then mfkc_distance.
MfkcResult distance_str(std::string_view a, std::string_view b,
                        const DistanceSpec& spec);

}  // namespace mfkc
