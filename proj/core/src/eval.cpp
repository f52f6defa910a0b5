#include "mfkc/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "mfkc/error.hpp"

namespace mfkc {

DistanceFn mfkc_distance_fn(const DistanceSpec& spec) {
  spec.validate();
  return {"mfkc", [spec](std::string_view a, std::string_view b) {
            return distance_str(a, b, spec).distance;
          }};
}

DistanceFn levenshtein_fn(CharUnit unit) {
  return {"levenshtein", [unit](std::string_view a, std::string_view b) {
            return static_cast<double>(levenshtein(a, b, unit));
          }};
}

DistanceFn hamming_fn(HammingMode mode, CharUnit unit) {
  return {"hamming", [mode, unit](std::string_view a, std::string_view b) {
            return static_cast<double>(hamming(a, b, mode, unit));
          }};
}

DistanceFn jaccard_fn(SetMode mode, CharUnit unit) {
  return {"jaccard", [mode, unit](std::string_view a, std::string_view b) {
            return jaccard_distance(a, b, mode, unit);
          }};
}

DistanceFn tanimoto_fn() {
  return {"tanimoto", [](std::string_view a, std::string_view b) {
            return tanimoto_distance(a, b);
          }};
}

DistanceFn make_distance_fn(std::string_view method,
                            const MethodOptions& options) {
  if (method == "mfkc") return mfkc_distance_fn(options.mfkc);
  if (method == "levenshtein") return levenshtein_fn(options.mfkc.unit);
  if (method == "hamming") return hamming_fn(options.hamming, options.mfkc.unit);
  if (method == "jaccard") return jaccard_fn(options.jaccard, options.mfkc.unit);
  if (method == "tanimoto") return tanimoto_fn();
  throw ConfigError("unknown method '" + std::string(method) +
                    "' (expected mfkc, levenshtein, hamming, jaccard or "
                    "tanimoto)");
}

std::string knn_classify(std::string_view query,
                         std::span<const Document> train,
                         std::size_t k_neighbors, const DistanceFn& distance) {
  if (train.empty()) throw DataError("k-NN needs a non-empty training set");
  if (k_neighbors == 0) throw ConfigError("k_neighbors must be at least 1");

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    ranked.emplace_back(distance(query, train[i].body), i);
  }
  const auto take = std::min(k_neighbors, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + take, ranked.end());

  // Labels in the order their nearest member appears among the neighbors.
  std::vector<std::pair<std::string_view, std::size_t>> votes;
  for (std::size_t i = 0; i < take; ++i) {
    const std::string_view label = train[ranked[i].second].label;
    auto it = std::find_if(votes.begin(), votes.end(),
                           [&](const auto& v) { return v.first == label; });
    if (it == votes.end()) {
      votes.emplace_back(label, 1);
    } else {
      ++it->second;
    }
  }
  // max_element keeps the first of equal maxima
  const auto winner = std::max_element(
      votes.begin(), votes.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  return std::string(winner->first);
}

double accuracy(std::span<const Prediction> predictions) {
  if (predictions.empty()) throw DataError("accuracy of zero predictions");
  const auto correct = std::count_if(
      predictions.begin(), predictions.end(),
      [](const auto& p) { return p.truth == p.predicted; });
  return static_cast<double>(correct) /
         static_cast<double>(predictions.size());
}

namespace {

struct IndicatorRows {
  std::vector<std::size_t> truth;
  std::vector<std::size_t> predicted;
};

IndicatorRows index_predictions(std::span<const Prediction> predictions,
                                std::span<const std::string> labels) {
  if (predictions.empty()) throw DataError("error metric of zero predictions");
  auto index_of = [&](const std::string& label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      throw DataError("label '" + label + "' is not in the label set");
    }
    return static_cast<std::size_t>(it - labels.begin());
  };
  IndicatorRows rows;
  for (const auto& p : predictions) {
    rows.truth.push_back(index_of(p.truth));
    rows.predicted.push_back(index_of(p.predicted));
  }
  return rows;
}

}  // namespace

double rmse(std::span<const Prediction> predictions,
            std::span<const std::string> labels) {
  const auto rows = index_predictions(predictions, labels);
  // A wrong prediction contributes two unit cells, a right one none.
  double squared = 0.0;
  for (std::size_t i = 0; i < rows.truth.size(); ++i) {
    if (rows.truth[i] != rows.predicted[i]) squared += 2.0;
  }
  const double cells =
      static_cast<double>(rows.truth.size()) * static_cast<double>(labels.size());
  return std::sqrt(squared / cells);
}

double rae(std::span<const Prediction> predictions,
           std::span<const std::string> labels) {
  const auto rows = index_predictions(predictions, labels);
  const double n = static_cast<double>(rows.truth.size());

  std::vector<double> mean(labels.size(), 0.0);
  for (auto t : rows.truth) mean[t] += 1.0 / n;

  double error = 0.0;
  double baseline = 0.0;
  for (std::size_t i = 0; i < rows.truth.size(); ++i) {
    if (rows.truth[i] != rows.predicted[i]) error += 2.0;
    for (std::size_t l = 0; l < labels.size(); ++l) {
      const double t = rows.truth[i] == l ? 1.0 : 0.0;
      baseline += std::abs(t - mean[l]);
    }
  }
  if (baseline <= 0.0) {
    throw DataError("RAE is undefined when every true label is identical");
  }
  return error / baseline;
}

std::vector<std::size_t> assign_folds(const Corpus& corpus, std::size_t folds,
                                      std::uint64_t seed) {
  if (folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
  const auto labels = corpus.labels();
  std::vector<std::vector<std::size_t>> members(labels.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    members[corpus.label_index(corpus[i].label)].push_back(i);
  }
  for (std::size_t l = 0; l < labels.size(); ++l) {
    if (members[l].size() < folds) {
      throw DataError("label '" + labels[l] + "' has " +
                      std::to_string(members[l].size()) +
                      " documents, fewer than the " + std::to_string(folds) +
                      " folds");
    }
  }

  std::vector<std::size_t> fold_of(corpus.size(), 0);
  std::mt19937_64 rng(seed);
  std::size_t next = 0;
  for (auto& group : members) {
    for (std::size_t i = group.size() - 1; i > 0; --i) {
      std::swap(group[i], group[rng() % (i + 1)]);
    }
    for (auto doc : group) {
      fold_of[doc] = next;
      next = (next + 1) % folds;
    }
  }
  return fold_of;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.n = values.size();
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

namespace {

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(n, jobs));
}

// Classifies every test document. Each worker owns a strided slice of the
// output slots, so the result is independent of scheduling.
std::vector<std::string> classify_all(std::span<const Document> test,
                                      std::span<const Document> train,
                                      const CvConfig& config,
                                      const DistanceFn& distance) {
  std::vector<std::string> predicted(test.size());
  const auto workers = worker_count(config.threads, test.size());
  auto run = [&](std::size_t first) {
    for (std::size_t i = first; i < test.size(); i += workers) {
      predicted[i] = knn_classify(test[i].body, train, config.neighbors, distance);
    }
  };
  if (workers == 1) {
    run(0);
    return predicted;
  }
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        run(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return predicted;
}

}  // namespace

EvalReport cross_validate(const Corpus& corpus, const DistanceFn& distance,
                          const CvConfig& config) {
  if (config.neighbors == 0) {
    throw ConfigError("k_neighbors must be at least 1");
  }
  const auto fold_of = assign_folds(corpus, config.folds, config.seed);
  const auto labels = corpus.labels();

  EvalReport report;
  report.method = distance.name;
  report.config = config;
  report.documents = corpus.size();
  report.labels.assign(labels.begin(), labels.end());
  report.confusion.assign(labels.size(),
                          std::vector<std::size_t>(labels.size(), 0));

  std::vector<double> accuracies;
  std::vector<double> rmses;
  std::vector<double> raes;
  for (std::size_t fold = 0; fold < config.folds; ++fold) {
    std::vector<Document> train;
    std::vector<Document> test;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      (fold_of[i] == fold ? test : train).push_back(corpus[i]);
    }
    const auto predicted = classify_all(test, train, config, distance);

    std::vector<Prediction> predictions;
    for (std::size_t i = 0; i < test.size(); ++i) {
      predictions.push_back({test[i].label, predicted[i]});
      ++report.confusion[corpus.label_index(test[i].label)]
                        [corpus.label_index(predicted[i])];
    }

    FoldMetrics metrics;
    metrics.fold = fold;
    metrics.test_size = test.size();
    metrics.accuracy = accuracy(predictions);
    metrics.rmse = rmse(predictions, labels);
    try {
      metrics.rae = rae(predictions, labels);
      raes.push_back(*metrics.rae);
    } catch (const DataError&) {
      metrics.rae.reset();
    }
    accuracies.push_back(metrics.accuracy);
    rmses.push_back(metrics.rmse);
    report.per_fold.push_back(metrics);
  }
  report.accuracy = summarize(accuracies);
  report.rmse = summarize(rmses);
  report.rae = summarize(raes);
  return report;
}

namespace {

// Per-pair cost as k-NN pays it: each document hashed once, then every
// ordered pair compared. Batches rotate through the specs so slow drift of
// the machine lands on every k alike; the first round is a warm-up.
std::vector<double> time_pairs_ns(const Corpus& corpus,
                                  const std::vector<DistanceSpec>& specs,
                                  std::size_t docs, std::size_t batches) {
  using clock = std::chrono::steady_clock;
  docs = std::min(docs, corpus.size());
  const std::size_t pairs = docs * (docs > 0 ? docs - 1 : 0);
  if (pairs == 0) return std::vector<double>(specs.size(), 0.0);

  volatile double sink = 0.0;
  std::vector<std::vector<double>> per_pair(specs.size());
  std::vector<FreqHash> hashes;
  hashes.reserve(docs);
  for (std::size_t b = 0; b <= batches; ++b) {
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const auto& spec = specs[s];
      hashes.clear();
      const auto start = clock::now();
      for (std::size_t i = 0; i < docs; ++i) {
        hashes.push_back(max_k_freq_hash(corpus[i].body, spec.k, spec.unit));
      }
      double acc = 0.0;
      for (std::size_t i = 0; i < docs; ++i) {
        for (std::size_t j = 0; j < docs; ++j) {
          if (i != j) acc += mfkc_distance(hashes[i], hashes[j], spec).distance;
        }
      }
      const auto elapsed = clock::now() - start;
      sink = sink + acc;
      if (b == 0) continue;
      per_pair[s].push_back(
          std::chrono::duration<double, std::nano>(elapsed).count() /
          static_cast<double>(pairs));
    }
  }
  std::vector<double> out;
  for (auto& v : per_pair) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    out.push_back(std::max(v[v.size() / 2], 1e-3));
  }
  return out;
}

}  // namespace

SweepReport k_sweep(const Corpus& corpus, const SweepConfig& config) {
  if (config.k_values.empty()) throw ConfigError("k_values must be non-empty");
  for (auto k : config.k_values) {
    if (k == 0) throw ConfigError("every swept k must be at least 1");
  }
  if (config.timing_batches == 0) {
    throw ConfigError("timing_batches must be at least 1");
  }
  SweepReport report;
  report.config = config;
  report.documents = corpus.size();
  std::vector<DistanceSpec> specs;
  for (auto k : config.k_values) {
    DistanceSpec spec = config.base;
    spec.k = k;
    const auto eval = cross_validate(corpus, mfkc_distance_fn(spec), config.cv);
    report.rows.push_back({k, eval.accuracy.mean, 0.0});
    specs.push_back(spec);
  }
  const auto times =
      time_pairs_ns(corpus, specs, config.timing_docs, config.timing_batches);
  for (std::size_t i = 0; i < times.size(); ++i) {
    report.rows[i].mean_pair_ns = times[i];
  }
  return report;
}

}  // namespace mfkc
