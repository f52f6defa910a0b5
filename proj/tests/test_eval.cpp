#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "mfkc/corpus.hpp"
#include "mfkc/error.hpp"
#include "mfkc/eval.hpp"
#include "support/oracles.hpp"

using namespace mfkc;

namespace {

// Distance that ignores the query and reads a number from the training
// body, so neighbor order can be dictated directly.
DistanceFn body_as_distance() {
  return {"fixed", [](std::string_view, std::string_view body) {
            return std::stod(std::string(body));
          }};
}

std::vector<Prediction> preds(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<Prediction> out;
  for (const auto& [t, p] : pairs) out.push_back({t, p});
  return out;
}

Corpus single_label(std::size_t n) {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < n; ++i) {
    docs.push_back({std::to_string(i), "A", std::string(i + 1, 'a')});
  }
  return Corpus(std::move(docs));
}

SynthSpec small_synth(double skew, std::uint64_t seed = 1) {
  SynthSpec spec;
  spec.n_labels = 3;
  spec.docs_per_label = 10;
  spec.doc_length = 200;
  spec.skew = skew;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("distance functions by name") {
  CHECK(make_distance_fn("levenshtein")("revolution", "evolution") == 1);
  CHECK(make_distance_fn("hamming")("revolution", "evolution") == 9);
  CHECK(make_distance_fn("jaccard")("abc", "abd") == 0.5);
  CHECK(make_distance_fn("tanimoto")("abc", "abc") == 0);
  MethodOptions options;
  options.mfkc.variant = Variant::kMinOverlap;
  options.hamming = HammingMode::kPadded;
  options.jaccard = SetMode::kBigrams;
  CHECK(make_distance_fn("mfkc", options)("seeking", "research") == 8);
  CHECK(make_distance_fn("hamming", options)("revolution", "evolution") == 10);
  CHECK(make_distance_fn("jaccard", options)("a", "b") == 0);
  CHECK(make_distance_fn("mfkc")("seeking", "research") == 6);
  CHECK_THROWS_AS(make_distance_fn("cosine"), ConfigError);
  CHECK(make_distance_fn("levenshtein").name == "levenshtein");
}

TEST_CASE("knn_classify examples") {
  const std::vector<Document> one{{"1", "A", "99"}};
  CHECK(knn_classify("q", one, 5, body_as_distance()) == "A");

  const std::vector<Document> three{
      {"1", "A", "1"}, {"2", "B", "2"}, {"3", "B", "3"}};
  CHECK(knn_classify("q", three, 3, body_as_distance()) == "B");
  CHECK(knn_classify("q", three, 1, body_as_distance()) == "A");

  const std::vector<Document> texts{
      {"1", "A", "night"}, {"2", "B", "nacht"}, {"3", "C", "knight"}};
  CHECK(knn_classify("nacht", texts, 1, levenshtein_fn()) == "B");
}

TEST_CASE("knn tie-breaking") {
  // equal distances: earlier training position wins
  const std::vector<Document> tied{{"1", "B", "5"}, {"2", "A", "5"}};
  CHECK(knn_classify("q", tied, 1, body_as_distance()) == "B");
  // 1-1 vote: the label with the nearest member wins
  const std::vector<Document> votes{
      {"1", "A", "4"}, {"2", "B", "1"}, {"3", "A", "2"}, {"4", "B", "3"}};
  CHECK(knn_classify("q", votes, 4, body_as_distance()) == "B");
  CHECK(knn_classify("q", votes, 2, body_as_distance()) == "B");
}

TEST_CASE("knn preconditions") {
  const std::vector<Document> none;
  CHECK_THROWS_AS(knn_classify("q", none, 1, levenshtein_fn()), DataError);
  const std::vector<Document> one{{"1", "A", "x"}};
  CHECK_THROWS_AS(knn_classify("q", one, 0, levenshtein_fn()), ConfigError);
}

TEST_CASE("accuracy examples") {
  CHECK(accuracy(preds({{"A", "A"}, {"B", "B"}})) == 1.0);
  CHECK(accuracy(preds({{"A", "B"}, {"B", "A"}})) == 0.0);
  CHECK(accuracy(preds({{"A", "A"}, {"B", "B"}, {"A", "A"}, {"B", "A"}})) == 0.75);
  CHECK_THROWS_AS(accuracy({}), DataError);
}

TEST_CASE("rmse and rae examples") {
  const std::vector<std::string> ab{"A", "B"};
  const auto perfect = preds({{"A", "A"}, {"B", "B"}});
  CHECK(rmse(perfect, ab) == 0.0);
  CHECK(rae(perfect, ab) == 0.0);

  const auto one_wrong = preds({{"A", "A"}, {"B", "A"}});
  CHECK(rmse(one_wrong, ab) == doctest::Approx(std::sqrt(0.5)));
  CHECK(rmse(one_wrong, ab) == doctest::Approx(0.707).epsilon(1e-3));

  const auto all_wrong = preds({{"A", "B"}, {"B", "A"}});
  CHECK(rae(all_wrong, ab) == doctest::Approx(2.0));

  CHECK_THROWS_AS(rae(preds({{"A", "A"}, {"A", "B"}}), ab), DataError);
  CHECK_THROWS_AS(rmse(preds({{"A", "Z"}}), ab), DataError);
  CHECK_THROWS_AS(rmse({}, ab), DataError);
}

TEST_CASE("rmse and rae agree with indicator-matrix oracle") {
  const std::vector<std::string> labels{"A", "B", "C"};
  const std::vector<std::pair<std::string, std::string>> cases[] = {
      {{"A", "A"}, {"B", "C"}, {"C", "C"}, {"A", "B"}},
      {{"A", "B"}, {"A", "C"}, {"B", "B"}},
      {{"C", "A"}, {"B", "A"}, {"A", "A"}, {"A", "A"}, {"B", "B"}},
  };
  for (const auto& c : cases) {
    const auto p = preds(c);
    CHECK(rmse(p, labels) == doctest::Approx(oracle::rmse(c, labels)));
    CHECK(rae(p, labels) == doctest::Approx(oracle::rae(c, labels)));
  }
}

TEST_CASE("summarize uses the sample standard deviation") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto s = summarize(v);
  CHECK(s.mean == 2.5);
  CHECK(s.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.n == 4);
  const std::vector<double> one{7.0};
  CHECK(summarize(one) == Summary{7.0, 0.0, 1});
  CHECK(summarize({}) == Summary{});
}

TEST_CASE("fold assignment is stratified, balanced and seeded") {
  const auto corpus = synth_corpus(small_synth(0.9));
  const auto folds = assign_folds(corpus, 5, 3);
  REQUIRE(folds.size() == corpus.size());

  std::map<std::size_t, std::size_t> sizes;
  std::map<std::pair<std::string, std::size_t>, std::size_t> per_label;
  for (std::size_t i = 0; i < folds.size(); ++i) {
    CHECK(folds[i] < 5);
    ++sizes[folds[i]];
    ++per_label[{corpus[i].label, folds[i]}];
  }
  CHECK(sizes.size() == 5);
  for (auto [fold, n] : sizes) CHECK(n == 6);
  for (auto [key, n] : per_label) CHECK(n == 2);

  CHECK(assign_folds(corpus, 5, 3) == folds);
  CHECK_FALSE(assign_folds(corpus, 5, 4) == folds);
}

TEST_CASE("fold assignment rotation keeps uneven sizes within one") {
  std::vector<Document> docs;
  for (int i = 0; i < 7; ++i) docs.push_back({"a" + std::to_string(i), "A", "x"});
  for (int i = 0; i < 5; ++i) docs.push_back({"b" + std::to_string(i), "B", "y"});
  const Corpus corpus(std::move(docs));
  const auto folds = assign_folds(corpus, 5, 1);
  std::vector<std::size_t> sizes(5, 0);
  for (auto f : folds) ++sizes[f];
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  CHECK(*hi - *lo <= 1);
}

TEST_CASE("fold assignment preconditions") {
  const auto corpus = single_label(4);
  CHECK_THROWS_AS(assign_folds(corpus, 1, 1), ConfigError);
  try {
    assign_folds(Corpus({{"1", "A", ""}, {"2", "A", ""}, {"3", "thin", ""}}), 2, 1);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("thin") != std::string::npos);
  }
}

TEST_CASE("ten documents in ten folds test one document each") {
  CvConfig cv;
  cv.folds = 10;
  cv.neighbors = 3;
  const auto report = cross_validate(single_label(10), levenshtein_fn(), cv);
  REQUIRE(report.per_fold.size() == 10);
  for (std::size_t f = 0; f < 10; ++f) {
    CHECK(report.per_fold[f].fold == f);
    CHECK(report.per_fold[f].test_size == 1);
    CHECK_FALSE(report.per_fold[f].rae.has_value());
  }
  CHECK(report.accuracy.mean == 1.0);
  CHECK(report.rae.n == 0);
  CHECK(report.documents == 10);
}

TEST_CASE("cross_validate is deterministic and thread-count independent") {
  const auto corpus = synth_corpus(small_synth(0.5));
  CvConfig cv;
  cv.folds = 5;
  cv.neighbors = 3;
  cv.seed = 8;
  const auto fn = mfkc_distance_fn(DistanceSpec{});
  const auto a = cross_validate(corpus, fn, cv);
  CHECK(cross_validate(corpus, fn, cv) == a);
  cv.threads = 3;
  auto b = cross_validate(corpus, fn, cv);
  b.config.threads = 1;
  CHECK(b == a);
}

TEST_CASE("cross_validate report structure") {
  const auto corpus = synth_corpus(small_synth(0.9));
  CvConfig cv;
  cv.folds = 5;
  cv.neighbors = 1;
  const auto report = cross_validate(corpus, jaccard_fn(), cv);
  CHECK(report.method == "jaccard");
  CHECK(report.labels == std::vector<std::string>{"author0", "author1", "author2"});
  REQUIRE(report.confusion.size() == 3);
  std::size_t total = 0;
  for (const auto& row : report.confusion) {
    REQUIRE(row.size() == 3);
    for (auto n : row) total += n;
  }
  CHECK(total == corpus.size());
  std::size_t tested = 0;
  for (const auto& f : report.per_fold) tested += f.test_size;
  CHECK(tested == corpus.size());
  CHECK(report.accuracy.n == 5);
}

TEST_CASE("skew 1 is easy for MFKC with K = 2") {
  SynthSpec spec;
  spec.skew = 1.0;
  CvConfig cv;
  DistanceSpec mfkc;
  mfkc.variant = Variant::kMinOverlap;
  const auto report = cross_validate(synth_corpus(spec), mfkc_distance_fn(mfkc), cv);
  CHECK(report.accuracy.mean > 0.9);
}

TEST_CASE("cross_validate surfaces worker errors") {
  CvConfig cv;
  cv.folds = 2;
  cv.threads = 2;
  const DistanceFn boom{"boom", [](std::string_view, std::string_view) -> double {
                          throw DataError("boom");
                        }};
  CHECK_THROWS_AS(cross_validate(single_label(4), boom, cv), DataError);
}

TEST_CASE("k_sweep structure") {
  SweepConfig config;
  config.k_values = {1};
  config.cv.folds = 3;
  config.timing_docs = 4;
  config.timing_batches = 3;
  const auto corpus = synth_corpus(small_synth(0.9));
  const auto report = k_sweep(corpus, config);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].k == 1);
  CHECK(report.rows[0].mean_pair_ns > 0);
  CHECK(report.documents == corpus.size());

  config.k_values = {};
  CHECK_THROWS_AS(k_sweep(corpus, config), ConfigError);
  config.k_values = {0};
  CHECK_THROWS_AS(k_sweep(corpus, config), ConfigError);
}

TEST_CASE("k_sweep accuracy uses the same folds as cross_validate") {
  SweepConfig config;
  config.k_values = {1, 2};
  config.cv.folds = 5;
  config.cv.neighbors = 3;
  config.base.variant = Variant::kMinOverlap;
  config.timing_docs = 2;
  config.timing_batches = 1;
  const auto corpus = synth_corpus(small_synth(0.6));
  const auto report = k_sweep(corpus, config);
  for (const auto& row : report.rows) {
    auto spec = config.base;
    spec.k = row.k;
    const auto cv = cross_validate(corpus, mfkc_distance_fn(spec), config.cv);
    CHECK(row.mean_accuracy == cv.accuracy.mean);
  }
}

TEST_CASE("larger K does not hurt on a skewed corpus") {
  SynthSpec spec;
  spec.skew = 0.3;
  SweepConfig config;
  config.k_values = {1, 2, 3};
  config.base.variant = Variant::kMinOverlap;
  config.base.limit = static_cast<double>(spec.doc_length);
  config.timing_docs = 2;
  config.timing_batches = 1;
  const auto report = k_sweep(synth_corpus(spec), config);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[2].mean_accuracy >= report.rows[0].mean_accuracy);
}

TEST_CASE("per-pair time grows with K") {
  SweepConfig config;
  config.k_values = {1, 2, 4, 8};
  config.cv.folds = 2;
  config.cv.neighbors = 1;
  config.timing_docs = 64;
  config.timing_batches = 15;
  SynthSpec spec;
  spec.n_labels = 2;
  spec.docs_per_label = 32;
  const auto report = k_sweep(synth_corpus(spec), config);
  REQUIRE(report.rows.size() == 4);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    INFO("k=" << report.rows[i].k << " " << report.rows[i].mean_pair_ns
              << " ns vs " << report.rows[i - 1].mean_pair_ns << " ns");
    CHECK(report.rows[i].mean_pair_ns >= report.rows[i - 1].mean_pair_ns);
  }
}
