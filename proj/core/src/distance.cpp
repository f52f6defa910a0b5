#include "mfkc/distance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfkc/error.hpp"

namespace mfkc {

std::string_view to_string(Variant variant) {
  return variant == Variant::kMinOverlap ? "min" : "sum";
}

Variant parse_variant(std::string_view name) {
  if (name == "sum" || name == "summatch") return Variant::kSumMatch;
  if (name == "min" || name == "minoverlap") return Variant::kMinOverlap;
  throw ConfigError("unknown variant '" + std::string(name) +
                    "' (expected sum or min)");
}

void DistanceSpec::validate() const {
  if (k == 0) throw ConfigError("k must be at least 1");
  if (!(limit > 0.0) || !std::isfinite(limit)) {
    throw ConfigError("limit must be a positive finite number");
  }
}

double mfkc_similarity(const FreqHash& a, const FreqHash& b,
                       Variant variant) {
  if (a.k() != b.k()) {
    throw ConfigError("hash widths differ: k=" + std::to_string(a.k()) +
                      " vs k=" + std::to_string(b.k()));
  }
  if (a.unit() != b.unit()) {
    throw ConfigError("hashes were computed with different character units");
  }
  std::uint64_t similarity = 0;
  for (const auto& x : a.entries()) {
    if (x.is_padding()) break;
    for (const auto& y : b.entries()) {
      if (y.is_padding()) break;
      if (*x.symbol != *y.symbol) continue;
      similarity += variant == Variant::kSumMatch ? x.count + y.count
                                                  : std::min(x.count, y.count);
      break;
    }
  }
  return static_cast<double>(similarity);
}

MfkcResult mfkc_distance(const FreqHash& a, const FreqHash& b,
                         const DistanceSpec& spec) {
  spec.validate();
  if (a.k() != spec.k || b.k() != spec.k) {
    throw ConfigError("hash width does not match spec.k=" +
                      std::to_string(spec.k));
  }
  MfkcResult result;
  result.similarity = mfkc_similarity(a, b, spec.variant);
  result.distance = spec.limit - result.similarity;
  if (spec.clamp && result.distance < 0.0) {
    result.distance = 0.0;
    result.clamped = true;
  }
  return result;
}

MfkcResult distance_str(std::string_view a, std::string_view b,
                        const DistanceSpec& spec) {
  spec.validate();
  return mfkc_distance(max_k_freq_hash(a, spec.k, spec.unit),
                       max_k_freq_hash(b, spec.k, spec.unit), spec);
}

}  // namespace mfkc
