#include "cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfkc/baselines.hpp"
#include "mfkc/bench.hpp"
#include "mfkc/corpus.hpp"
#include "mfkc/distance.hpp"
#include "mfkc/error.hpp"
#include "mfkc/eval.hpp"
#include "mfkc/freq_hash.hpp"
#include "mfkc/report_io.hpp"

namespace mfkc::cli {

namespace {

using json = nlohmann::json;

struct GlobalOptions {
  std::size_t k = 2;
  double limit = 10.0;
  std::string variant = "sum";
  std::string unit = "scalar";
  bool no_clamp = false;
  std::uint64_t seed = 1;
  std::string format = "tsv";

  DistanceSpec spec() const {
    DistanceSpec s;
    s.k = k;
    s.limit = limit;
    s.variant = parse_variant(variant);
    s.unit = parse_char_unit(unit);
    s.clamp = !no_clamp;
    s.validate();
    return s;
  }
  bool json_output() const { return format == "json"; }
};

struct Input {
  std::string id;
  std::string text;
};

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path);
  return buffer.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

// Keeps ids on one TSV cell.
std::string tsv_cell(std::string s) {
  for (auto& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::string first_word(const std::string& header) {
  const auto end = header.find_first_of(" \t");
  return end == std::string::npos ? header : header.substr(0, end);
}

// Positional strings are their own ids, file lines are numbered from 1 and
// FASTA records use the first word of their header.
std::vector<Input> gather_inputs(const std::vector<std::string>& strings,
                                 const std::string& file,
                                 const std::string& fasta, bool number_all) {
  std::vector<Input> inputs;
  for (const auto& s : strings) inputs.push_back({s, s});
  if (!file.empty()) {
    for (auto& line : read_lines(file)) {
      inputs.push_back({{}, std::move(line)});
    }
  }
  if (!fasta.empty()) {
    for (auto& rec : parse_fasta(read_text_file(fasta))) {
      inputs.push_back({first_word(rec.header), std::move(rec.sequence)});
    }
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (number_all || inputs[i].id.empty()) {
      inputs[i].id = std::to_string(i + 1);
    }
  }
  return inputs;
}

struct MethodFlags {
  std::string method = "mfkc";
  std::string hamming_mode = "min-length";
  std::string jaccard_mode = "char";

  MethodOptions options(const GlobalOptions& g) const {
    MethodOptions o;
    o.mfkc = g.spec();
    o.hamming = parse_hamming_mode(hamming_mode);
    o.jaccard = parse_set_mode(jaccard_mode);
    return o;
  }
};

void add_method_flags(CLI::App* cmd, MethodFlags& flags) {
  cmd->add_option("--method", flags.method, "Distance function")
      ->check(CLI::IsMember(
          {"mfkc", "levenshtein", "hamming", "jaccard", "tanimoto"}))
      ->capture_default_str();
  cmd->add_option("--hamming-mode", flags.hamming_mode,
                  "Hamming on unequal lengths")
      ->check(CLI::IsMember({"min-length", "padded"}))
      ->capture_default_str();
  cmd->add_option("--jaccard-mode", flags.jaccard_mode, "Jaccard set contents")
      ->check(CLI::IsMember({"char", "bigram"}))
      ->capture_default_str();
}

struct CorpusFlags {
  std::string corpus;
  std::string corpus_format = "jsonl";
  std::string synth;

  Corpus load(std::uint64_t seed) const {
    if (!corpus.empty()) {
      return load_corpus(corpus, parse_corpus_format(corpus_format));
    }
    auto spec = parse_synth_spec(synth);
    if (synth.find("seed=") == std::string::npos) spec.seed = seed;
    return synth_corpus(spec);
  }
};

void add_corpus_flags(CLI::App* cmd, CorpusFlags& flags) {
  auto* path = cmd->add_option("--corpus", flags.corpus,
                               "Labeled corpus (directory or jsonl file)");
  cmd->add_option("--corpus-format", flags.corpus_format,
                  "Layout of --corpus")
      ->check(CLI::IsMember({"dir", "jsonl"}))
      ->capture_default_str();
  auto* synth = cmd->add_option(
      "--synth", flags.synth,
      "Synthetic corpus, e.g. labels=4,docs=40,len=400,skew=0.9[,seed=N]");
  path->excludes(synth);
  cmd->require_option(1, 0);
}

struct CvFlags {
  std::size_t folds = 10;
  std::size_t neighbors = 5;
  std::size_t threads = 0;
};

void add_cv_flags(CLI::App* cmd, CvFlags& flags) {
  cmd->add_option("--folds", flags.folds, "Cross-validation folds")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  cmd->add_option("--neighbors", flags.neighbors, "k-NN neighbor count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", flags.threads,
                  "Distance workers (0 = hardware concurrency)")
      ->capture_default_str();
}

// ---------------------------------------------------------------------------

void cmd_hash(const GlobalOptions& g, const std::vector<std::string>& strings,
              const std::string& file, const std::string& fasta,
              std::ostream& out) {
  const auto spec = g.spec();
  const auto inputs = gather_inputs(strings, file, fasta, false);
  if (inputs.empty()) throw ConfigError("hash: no inputs given");
  json items = json::array();
  for (const auto& in : inputs) {
    const auto encoded = encode_hash(max_k_freq_hash(in.text, spec.k, spec.unit));
    if (g.json_output()) {
      items.push_back({{"id", in.id}, {"hash", encoded}});
    } else {
      out << tsv_cell(in.id) << '\t' << encoded << '\n';
    }
  }
  if (g.json_output()) out << items.dump(2) << '\n';
}

struct DistValue {
  double distance = 0.0;
  std::optional<double> similarity;
  std::optional<bool> clamped;
};

DistValue compute_dist(const MethodFlags& m, const GlobalOptions& g,
                       const std::string& a, const std::string& b) {
  const auto opts = m.options(g);
  if (m.method == "mfkc") {
    const auto r = distance_str(a, b, opts.mfkc);
    return {r.distance, r.similarity, r.clamped};
  }
  if (m.method == "jaccard") {
    const double index = jaccard_index(a, b, opts.jaccard, opts.mfkc.unit);
    return {1.0 - index, index, std::nullopt};
  }
  if (m.method == "tanimoto") {
    return {tanimoto_distance(a, b), tanimoto_similarity(a, b), std::nullopt};
  }
  return {make_distance_fn(m.method, opts)(a, b), std::nullopt, std::nullopt};
}

void cmd_dist(const GlobalOptions& g, const MethodFlags& m,
              const std::vector<std::string>& pair, bool verbose,
              std::ostream& out) {
  const auto v = compute_dist(m, g, pair[0], pair[1]);
  if (g.json_output()) {
    json doc = {{"method", m.method},
                {"distance", std::isfinite(v.distance) ? json(v.distance)
                                                       : json(nullptr)}};
    if (v.similarity) doc["similarity"] = *v.similarity;
    if (v.clamped) doc["clamped"] = *v.clamped;
    out << doc.dump(2) << '\n';
    return;
  }
  out << format_number(v.distance);
  if (verbose && v.similarity) out << '\t' << format_number(*v.similarity);
  out << '\n';
}

void cmd_matrix(const GlobalOptions& g, const MethodFlags& m,
                const std::vector<std::string>& strings,
                const std::string& file, std::ostream& out) {
  const auto inputs = gather_inputs(strings, file, {}, true);
  if (inputs.size() < 2) {
    throw ConfigError("matrix needs at least 2 inputs, got " +
                      std::to_string(inputs.size()));
  }
  const auto distance = make_distance_fn(m.method, m.options(g));
  const auto n = inputs.size();
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      matrix[i][j] = matrix[j][i] = distance(inputs[i].text, inputs[j].text);
    }
  }
  if (g.json_output()) {
    json ids = json::array();
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      ids.push_back(inputs[i].id);
      json row = json::array();
      for (double d : matrix[i]) {
        row.push_back(std::isfinite(d) ? json(d) : json(nullptr));
      }
      rows.push_back(row);
    }
    out << json{{"method", m.method}, {"ids", ids}, {"matrix", rows}}.dump(2)
        << '\n';
    return;
  }
  out << "id";
  for (const auto& in : inputs) out << '\t' << in.id;
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    out << inputs[i].id;
    for (double d : matrix[i]) out << '\t' << format_number(d);
    out << '\n';
  }
}

void cmd_eval(const GlobalOptions& g, const MethodFlags& m,
              const CorpusFlags& c, const CvFlags& cv, std::ostream& out) {
  const auto distance = make_distance_fn(m.method, m.options(g));
  const auto corpus = c.load(g.seed);
  const auto report = cross_validate(
      corpus, distance, CvConfig{cv.folds, cv.neighbors, g.seed, cv.threads});
  out << (g.json_output() ? to_json(report) + "\n" : to_tsv(report));
}

void cmd_sweep(const GlobalOptions& g, const CorpusFlags& c, const CvFlags& cv,
               const std::vector<std::size_t>& k_values,
               std::size_t timing_docs, std::ostream& out) {
  SweepConfig config;
  config.k_values = k_values;
  config.cv = CvConfig{cv.folds, cv.neighbors, g.seed, cv.threads};
  config.base = g.spec();
  config.timing_docs = timing_docs;
  const auto corpus = c.load(g.seed);
  const auto report = k_sweep(corpus, config);
  out << (g.json_output() ? to_json(report) + "\n" : to_tsv(report));
}

void cmd_bench(const GlobalOptions& g, const std::vector<std::size_t>& sizes,
               std::size_t reps, std::size_t alphabet,
               const std::vector<std::string>& methods, std::ostream& out) {
  const auto spec = g.spec();
  MethodOptions opts;
  opts.mfkc = spec;
  std::vector<BenchTarget> targets;
  for (const auto& name : methods) {
    if (name == "mfkc-prehashed") {
      targets.push_back(mfkc_prehashed_target(spec));
    } else {
      targets.push_back(bench_target(make_distance_fn(name, opts)));
    }
  }
  BenchConfig config;
  config.sizes = sizes;
  config.reps = reps;
  config.alphabet_size = alphabet;
  config.seed = g.seed;
  const auto report = time_targets(targets, config);
  out << (g.json_output() ? to_json(report) + "\n" : to_tsv(report));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Most-frequent-K-characters string distance toolkit", "mfkc"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--k", g.k, "Characters kept per hash")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--limit", g.limit, "MFKC distance ceiling")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--variant", g.variant, "MFKC similarity rule")
      ->check(CLI::IsMember({"sum", "min"}))
      ->capture_default_str();
  app.add_option("--unit", g.unit, "Character unit")
      ->check(CLI::IsMember({"scalar", "byte"}))
      ->capture_default_str();
  app.add_flag("--no-clamp", g.no_clamp, "Allow negative MFKC distances");
  app.add_option("--seed", g.seed, "Seed for folds and generated data")
      ->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json"}))
      ->capture_default_str();

  std::vector<std::string> strings;
  std::string file;
  std::string fasta;

  auto* hash = app.add_subcommand("hash", "Print MFKC hashes");
  hash->add_option("inputs", strings, "Strings to hash");
  hash->add_option("--file", file, "One input per line");
  hash->add_option("--fasta", fasta, "FASTA records");

  MethodFlags method;
  std::vector<std::string> pair;
  bool verbose = false;
  auto* dist = app.add_subcommand("dist", "Distance between two strings");
  dist->add_option("strings", pair, "The two strings")->expected(2)->required();
  dist->add_flag("--verbose", verbose, "Also print the similarity");
  add_method_flags(dist, method);

  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix");
  matrix->add_option("inputs", strings, "Strings to compare");
  matrix->add_option("--file", file, "One input per line");
  add_method_flags(matrix, method);

  CorpusFlags corpus;
  CvFlags cv;
  auto* eval = app.add_subcommand("eval", "k-NN cross-validation");
  add_corpus_flags(eval, corpus);
  add_cv_flags(eval, cv);
  add_method_flags(eval, method);

  std::vector<std::size_t> k_values{1, 2, 3, 4, 5};
  std::size_t timing_docs = 32;
  auto* sweep = app.add_subcommand("sweep", "Accuracy and time versus k");
  add_corpus_flags(sweep, corpus);
  add_cv_flags(sweep, cv);
  sweep->add_option("--k-values", k_values, "Comma-separated k values")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--timing-docs", timing_docs,
                    "Documents whose ordered pairs are timed")
      ->capture_default_str();

  std::vector<std::size_t> sizes{1024, 2048, 4096};
  std::size_t reps = 30;
  std::size_t alphabet = 26;
  std::vector<std::string> methods{"levenshtein", "jaccard", "mfkc",
                                   "mfkc-prehashed"};
  auto* bench = app.add_subcommand("bench", "Per-pair timing versus length");
  bench->add_option("--sizes", sizes, "Comma-separated string lengths")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--reps", reps, "Timed repetitions per cell (>= 30)")
      ->check(CLI::Range(std::size_t{30}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  bench->add_option("--alphabet", alphabet, "Workload alphabet size")
      ->check(CLI::Range(2, 62))
      ->capture_default_str();
  bench->add_option("--methods", methods, "Comma-separated functions")
      ->delimiter(',')
      ->check(CLI::IsMember({"mfkc", "mfkc-prehashed", "levenshtein",
                             "hamming", "jaccard", "tanimoto"}))
      ->capture_default_str();

  std::vector<std::string> argv_storage{"mfkc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "mfkc: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (hash->parsed()) {
      cmd_hash(g, strings, file, fasta, out);
    } else if (dist->parsed()) {
      cmd_dist(g, method, pair, verbose, out);
    } else if (matrix->parsed()) {
      cmd_matrix(g, method, strings, file, out);
    } else if (eval->parsed()) {
      cmd_eval(g, method, corpus, cv, out);
    } else if (sweep->parsed()) {
      cmd_sweep(g, corpus, cv, k_values, timing_docs, out);
    } else if (bench->parsed()) {
      cmd_bench(g, sizes, reps, alphabet, methods, out);
    }
  } catch (const ConfigError& e) {
    err << "mfkc: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "mfkc: " << e.what() << '\n';
    return kIoFailure;
  } catch (const ParseError& e) {
    err << "mfkc: " << e.what() << '\n';
    return kDataError;
  } catch (const DataError& e) {
    err << "mfkc: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

}  // namespace mfkc::cli
