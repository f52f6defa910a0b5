#include "mfkc/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "mfkc/char_unit.hpp"
#include "mfkc/error.hpp"

namespace mfkc {

namespace fs = std::filesystem;
using json = nlohmann::json;

Corpus::Corpus(std::vector<Document> documents)
    : documents_(std::move(documents)) {
  std::unordered_set<std::string_view> ids;
  for (const auto& doc : documents_) {
    if (!ids.insert(doc.id).second) {
      throw DataError("duplicate document id '" + doc.id + "'");
    }
    if (label_index(doc.label) == labels_.size()) labels_.push_back(doc.label);
  }
}

std::size_t Corpus::label_index(std::string_view label) const noexcept {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return static_cast<std::size_t>(it - labels_.begin());
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "dir" || name == "dir-per-label") {
    return CorpusFormat::kDirPerLabel;
  }
  if (name == "jsonl") return CorpusFormat::kJsonl;
  throw ConfigError("unknown corpus format '" + std::string(name) +
                    "' (expected dir or jsonl)");
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool hidden(const fs::path& p) {
  const auto name = p.filename().string();
  return !name.empty() && name.front() == '.';
}

Corpus load_dir_per_label(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw IoError(root.string() + " is not a directory");
  }
  std::vector<fs::path> label_dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && !hidden(entry.path())) {
      label_dirs.push_back(entry.path());
    }
  }
  std::sort(label_dirs.begin(), label_dirs.end());

  std::vector<Document> docs;
  for (const auto& dir : label_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && !hidden(entry.path())) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    const auto label = dir.filename().string();
    for (const auto& file : files) {
      docs.push_back({label + "/" + file.filename().string(), label,
                      read_file(file)});
    }
  }
  try {
    return Corpus(std::move(docs));
  } catch (const DataError& e) {
    throw IoError(root.string() + ": " + e.what());
  }
}

}  // namespace

Corpus read_jsonl(std::istream& in, std::string_view source) {
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  auto where = [&] {
    return std::string(source) + ":" + std::to_string(line_no) + ": ";
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw IoError(where() + "malformed JSON (" + e.what() + ")");
    }
    if (!record.is_object()) throw IoError(where() + "expected a JSON object");
    Document doc;
    for (auto [key, field] :
         {std::pair{"id", &doc.id}, std::pair{"author", &doc.label},
          std::pair{"text", &doc.body}}) {
      auto it = record.find(key);
      if (it == record.end()) {
        throw IoError(where() + "missing \"" + key + "\"");
      }
      if (!it->is_string()) {
        throw IoError(where() + "\"" + key + "\" must be a string");
      }
      *field = it->get<std::string>();
    }
    docs.push_back(std::move(doc));
  }
  try {
    return Corpus(std::move(docs));
  } catch (const DataError& e) {
    throw IoError(std::string(source) + ": " + e.what());
  }
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& doc : corpus.documents()) {
    const json record = {{"id", doc.id}, {"author", doc.label},
                         {"text", doc.body}};
    out << record.dump() << '\n';
  }
}

Corpus load_corpus(const fs::path& path, CorpusFormat format) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw IoError(path.string() + " does not exist");
  if (format == CorpusFormat::kDirPerLabel) return load_dir_per_label(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return read_jsonl(in, path.string());
}

std::vector<FastaRecord> parse_fasta(std::string_view text) {
  std::vector<FastaRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (!line.empty() && line.front() == '>') {
      auto header = line.substr(1);
      while (!header.empty() &&
             (header.back() == '\r' || header.back() == ' ' ||
              header.back() == '\t')) {
        header.remove_suffix(1);
      }
      records.push_back({std::string(header), {}});
      continue;
    }
    std::string residues;
    for (char c : line) {
      if (c != ' ' && c != '\t' && c != '\r' && c != '\v' && c != '\f') {
        residues.push_back(c);
      }
    }
    if (residues.empty()) continue;
    if (records.empty()) {
      throw ParseError("FASTA line " + std::to_string(line_no) +
                           ": sequence data before any header",
                       line_no);
    }
    records.back().sequence += residues;
  }
  return records;
}

namespace {

bool is_unicode_space(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 ||
         c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
         c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

bool is_punctuation(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  return c == 0xA1 || c == 0xA7 || c == 0xAB || c == 0xB6 || c == 0xB7 ||
         c == 0xBB || c == 0xBF || (c >= 0x2010 && c <= 0x2027) ||
         (c >= 0x2030 && c <= 0x205E) || (c >= 0x3001 && c <= 0x3003) ||
         (c >= 0x3008 && c <= 0x3011);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  struct Piece {
    std::size_t begin;
    std::size_t end;
    char32_t cp;
  };
  std::vector<std::string> tokens;
  std::vector<Piece> word;

  auto flush = [&] {
    std::size_t lo = 0;
    std::size_t hi = word.size();
    while (lo < hi && is_punctuation(word[lo].cp)) ++lo;
    while (hi > lo && is_punctuation(word[hi - 1].cp)) --hi;
    if (lo < hi) {
      tokens.emplace_back(
          text.substr(word[lo].begin, word[hi - 1].end - word[lo].begin));
    }
    word.clear();
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t begin = pos;
    const char32_t cp = detail::decode_utf8(text, pos);
    if (is_unicode_space(cp)) {
      flush();
    } else {
      word.push_back({begin, pos, cp});
    }
  }
  flush();
  return tokens;
}

// --- synthetic corpora ---------------------------------------------------

namespace {

constexpr std::size_t kSignatureSize = 3;
constexpr std::array<double, kSignatureSize> kSignatureWeights = {4, 2, 1};
constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz";

// Approximate English letter frequencies (percent), then the space.
constexpr std::array<double, 27> kBackgroundWeights = {
    8.2, 1.5, 2.8,  4.3, 12.7, 2.2, 2.0, 6.1,  7.0,   0.15,
    0.77, 4.0, 2.4, 6.7, 7.5,  1.9, 0.095, 6.0, 6.3,  9.1,
    2.8, 0.98, 2.4, 0.15, 2.0, 0.074, 18.0};

double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index drawn with probability proportional to weights.
template <std::size_t N>
std::size_t draw(std::mt19937_64& rng, const std::array<double, N>& cdf) {
  const double u = unit_real(rng) * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                               N - 1);
}

template <std::size_t N>
std::array<double, N> cumulative(const std::array<double, N>& weights) {
  std::array<double, N> cdf{};
  double total = 0;
  for (std::size_t i = 0; i < N; ++i) cdf[i] = total += weights[i];
  return cdf;
}

}  // namespace

void SynthSpec::validate() const {
  if (n_labels == 0 || docs_per_label == 0 || doc_length == 0) {
    throw ConfigError("synthetic corpus counts must be positive");
  }
  if (!(skew > 0.0 && skew <= 1.0)) {
    throw ConfigError("skew must lie in (0, 1]");
  }
  if (n_labels > max_synth_labels()) {
    throw ConfigError("at most " + std::to_string(max_synth_labels()) +
                      " labels have disjoint signatures; requested " +
                      std::to_string(n_labels));
  }
}

std::size_t max_synth_labels() noexcept {
  return kAlphabet.size() / kSignatureSize;
}

std::vector<std::string> synth_signatures(const SynthSpec& spec) {
  spec.validate();
  // The letter order is shuffled once per seed (Fisher-Yates on raw
  // mt19937_64 output so the result does not depend on the standard
  // library's distributions), then cut into consecutive triples.
  std::string letters(kAlphabet);
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = letters.size() - 1; i > 0; --i) {
    std::swap(letters[i], letters[rng() % (i + 1)]);
  }
  std::vector<std::string> signatures;
  for (std::size_t label = 0; label < spec.n_labels; ++label) {
    signatures.push_back(
        letters.substr(label * kSignatureSize, kSignatureSize));
  }
  return signatures;
}

Corpus synth_corpus(const SynthSpec& spec) {
  const auto signatures = synth_signatures(spec);
  const auto background_cdf = cumulative(kBackgroundWeights);
  const auto signature_cdf = cumulative(kSignatureWeights);
  const double p_signature = spec.skew / 2.0;

  // Separate stream from the signature shuffle.
  std::mt19937_64 rng(spec.seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<Document> docs;
  docs.reserve(spec.n_labels * spec.docs_per_label);
  for (std::size_t label = 0; label < spec.n_labels; ++label) {
    const std::string name = "author" + std::to_string(label);
    for (std::size_t d = 0; d < spec.docs_per_label; ++d) {
      std::string body;
      body.reserve(spec.doc_length);
      for (std::size_t i = 0; i < spec.doc_length; ++i) {
        if (unit_real(rng) < p_signature) {
          body.push_back(signatures[label][draw(rng, signature_cdf)]);
        } else {
          const auto idx = draw(rng, background_cdf);
          body.push_back(idx < kAlphabet.size() ? kAlphabet[idx] : ' ');
        }
      }
      docs.push_back({name + "-" + std::to_string(d), name, std::move(body)});
    }
  }
  return Corpus(std::move(docs));
}

SynthSpec parse_synth_spec(std::string_view text) {
  SynthSpec spec;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;

    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("synth spec item '" + std::string(item) +
                        "' is not key=value");
    }
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    auto bad = [&] {
      return ConfigError("synth spec: bad value for '" + std::string(key) +
                         "'");
    };
    auto as_uint = [&]() {
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || p != value.data() + value.size()) throw bad();
      return v;
    };
    if (key == "labels") {
      spec.n_labels = as_uint();
    } else if (key == "docs") {
      spec.docs_per_label = as_uint();
    } else if (key == "len" || key == "length") {
      spec.doc_length = as_uint();
    } else if (key == "seed") {
      spec.seed = as_uint();
    } else if (key == "skew") {
      try {
        std::size_t used = 0;
        spec.skew = std::stod(std::string(value), &used);
        if (used != value.size()) throw bad();
      } catch (const std::logic_error&) {
        throw bad();
      }
    } else {
      throw ConfigError("synth spec: unknown key '" + std::string(key) + "'");
    }
  }
  spec.validate();
  return spec;
}

}  // namespace mfkc
