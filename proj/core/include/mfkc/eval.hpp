#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfkc/baselines.hpp"
#include "mfkc/corpus.hpp"
#include "mfkc/distance.hpp"

namespace mfkc {

/// A named, pure, symmetric string distance.
struct DistanceFn {
  std::string name;
  std::function<double(std::string_view, std::string_view)> fn;

  double operator()(std::string_view a, std::string_view b) const {
    return fn(a, b);
  }
};

DistanceFn mfkc_distance_fn(const DistanceSpec& spec);
DistanceFn levenshtein_fn(CharUnit unit = CharUnit::kScalar);
DistanceFn hamming_fn(HammingMode mode = HammingMode::kMinLength,
                      CharUnit unit = CharUnit::kScalar);
DistanceFn jaccard_fn(SetMode mode = SetMode::kChars,
                      CharUnit unit = CharUnit::kScalar);
DistanceFn tanimoto_fn();

/// Options for the non-MFKC methods when a DistanceFn is chosen by name.
struct MethodOptions {
  DistanceSpec mfkc;
  HammingMode hamming = HammingMode::kMinLength;
  SetMode jaccard = SetMode::kChars;
};

/// "mfkc", "levenshtein", "hamming", "jaccard" or "tanimoto".
/// Throws ConfigError for anything else.
DistanceFn make_distance_fn(std::string_view method,
                            const MethodOptions& options = {});

struct Prediction {
  std::string truth;
  std::string predicted;
};

/// Majority label among the k_neighbors nearest training documents.
/// Distance ties go to the earlier training position; vote ties go to the
/// tied label whose nearest member ranks first. Throws DataError on an empty
/// training set and ConfigError when k_neighbors is 0.
std::string knn_classify(std::string_view query,
                         std::span<const Document> train,
                         std::size_t k_neighbors, const DistanceFn& distance);

/// Fraction of correct predictions. Throws DataError when empty.
double accuracy(std::span<const Prediction> predictions);

/// Predictions are expanded into one 0/1 indicator cell per label.
/// RMSE is the root of the mean squared cell error.
double rmse(std::span<const Prediction> predictions,
            std::span<const std::string> labels);
/// Sum of absolute cell errors over the sum of absolute deviations of the
/// true cells from each label's mean indicator. Throws DataError when that
/// denominator is 0 (every true label identical).
double rae(std::span<const Prediction> predictions,
           std::span<const std::string> labels);

struct CvConfig {
  std::size_t folds = 10;
  std::size_t neighbors = 5;
  std::uint64_t seed = 1;
  /// Workers used for the distance computations of a fold; 0 picks the
  /// hardware concurrency. Results do not depend on this value.
  std::size_t threads = 1;

  friend bool operator==(const CvConfig&, const CvConfig&) = default;
};

/// Stratified fold of each document. Within every label the documents are
/// shuffled with seed and dealt round-robin, continuing the rotation across
/// labels so fold sizes differ by at most one. Throws ConfigError when
/// folds < 2 and DataError naming the first label with fewer than folds
/// documents.
std::vector<std::size_t> assign_folds(const Corpus& corpus, std::size_t folds,
                                      std::uint64_t seed);

struct FoldMetrics {
  std::size_t fold = 0;
  std::size_t test_size = 0;
  double accuracy = 0.0;
  double rmse = 0.0;
  /// Empty when the fold's test labels are all identical.
  std::optional<double> rae;

  friend bool operator==(const FoldMetrics&, const FoldMetrics&) = default;
};

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation; 0 for n < 2
  std::size_t n = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary summarize(std::span<const double> values);

struct EvalReport {
  std::string method;
  CvConfig config;
  std::size_t documents = 0;
  std::vector<std::string> labels;
  std::vector<FoldMetrics> per_fold;
  Summary accuracy;
  Summary rmse;
  Summary rae;  ///< over the folds where RAE is defined
  /// confusion[true][predicted], indexed like labels.
  std::vector<std::vector<std::size_t>> confusion;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

EvalReport cross_validate(const Corpus& corpus, const DistanceFn& distance,
                          const CvConfig& config);

struct SweepConfig {
  std::vector<std::size_t> k_values;
  CvConfig cv;
  /// limit, variant, clamp and unit of the swept MFKC distance; k is
  /// overwritten per row.
  DistanceSpec base;
  /// The timing pass hashes the first timing_docs documents once and
  /// compares every ordered pair, timing_batches times per k with the k
  /// values interleaved, single-threaded.
  std::size_t timing_docs = 32;
  std::size_t timing_batches = 15;

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct SweepRow {
  std::size_t k = 0;
  double mean_accuracy = 0.0;
  double mean_pair_ns = 0.0;  ///< median batch time / ordered pairs

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepReport {
  SweepConfig config;
  std::size_t documents = 0;
  std::vector<SweepRow> rows;

  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// One cross-validation per k with MFKC distance, all sharing one fold
/// assignment, plus a per-pair timing pass.
SweepReport k_sweep(const Corpus& corpus, const SweepConfig& config);

}  // namespace mfkc
