#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mfkc/distance.hpp"
#include "mfkc/eval.hpp"

namespace mfkc {

struct Workload {
  std::string first;
  std::string second;
};

/// Two strings of n i.i.d. uniform characters drawn from the first
/// alphabet_size symbols of [a-zA-Z0-9]. Deterministic in seed. Throws
/// ConfigError unless n >= 1 and 2 <= alphabet_size <= 62.
Workload gen_workload(std::size_t n, std::size_t alphabet_size,
                      std::uint64_t seed);

/// Something to time. `prepare` runs untimed and returns the per-pair
/// operation, which may refer to the workload but to nothing else; its
/// result only keeps the work observable.
struct BenchTarget {
  std::string name;
  std::function<std::function<double()>(const Workload&)> prepare;
};

BenchTarget bench_target(DistanceFn distance);
/// MFKC with both hashes computed during prepare: times only the
/// comparison.
BenchTarget mfkc_prehashed_target(const DistanceSpec& spec);

struct BenchConfig {
  std::vector<std::size_t> sizes;  ///< non-decreasing
  std::size_t reps = 30;           ///< at least 30
  std::size_t alphabet_size = 26;
  std::uint64_t seed = 1;
  /// Each repetition runs the operation enough times to take at least this
  /// long; the per-pair time is the batch time divided by the count.
  double min_batch_ns = 200'000.0;
};

struct BenchRow {
  std::string function;
  std::size_t n = 0;
  std::size_t reps = 0;
  std::size_t inner = 0;  ///< operations per timed repetition
  double mean_ns = 0.0;
  double stddev_ns = 0.0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

/// time(n) / time(n / 2) for one function.
struct DoublingRatio {
  std::string function;
  std::size_t n = 0;
  double ratio = 0.0;

  friend bool operator==(const DoublingRatio&, const DoublingRatio&) = default;
};

struct BenchReport {
  std::size_t alphabet_size = 0;
  std::uint64_t seed = 0;
  std::vector<BenchRow> rows;
  std::vector<DoublingRatio> ratios;

  /// nullptr when absent.
  const BenchRow* find(std::string_view function, std::size_t n) const;
  const DoublingRatio* find_ratio(std::string_view function,
                                  std::size_t n) const;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Times each target at every size on the calling thread. The first batch
/// of every cell is a warm-up and is discarded; after that the sizes of a
/// target are timed in rotation, one batch each per repetition. Throws ConfigError for
/// empty or decreasing sizes or reps < 30.
BenchReport time_targets(std::span<const BenchTarget> targets,
                         const BenchConfig& config);
BenchReport time_distance(const DistanceFn& distance,
                          const BenchConfig& config);

/// Ratios for every row whose half-size row of the same function exists.
std::vector<DoublingRatio> doubling_ratios(std::span<const BenchRow> rows);

}  // namespace mfkc
