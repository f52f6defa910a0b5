#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mfkc {

struct Document {
  std::string id;
  std::string label;
  std::string body;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Labeled documents. Labels are kept in order of first appearance.
class Corpus {
 public:
  Corpus() = default;
  /// Throws DataError on duplicate document ids.
  explicit Corpus(std::vector<Document> documents);

  std::span<const Document> documents() const noexcept { return documents_; }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return documents_.size(); }
  bool empty() const noexcept { return documents_.empty(); }
  const Document& operator[](std::size_t i) const { return documents_[i]; }

  /// Position of label in labels(); labels().size() when absent.
  std::size_t label_index(std::string_view label) const noexcept;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::vector<Document> documents_;
  std::vector<std::string> labels_;
};

enum class CorpusFormat : std::uint8_t {
  kDirPerLabel,  ///< <root>/<label>/<file>, one document per file
  kJsonl,        ///< {"id": ..., "author": ..., "text": ...} per line
};

CorpusFormat parse_corpus_format(std::string_view name);

/// Throws IoError for a missing path, unreadable files, malformed JSON
/// lines (message names the line) and duplicate ids.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

/// jsonl reader/writer. `source` only decorates error messages.
Corpus read_jsonl(std::istream& in, std::string_view source = "<stream>");
void write_jsonl(const Corpus& corpus, std::ostream& out);

struct FastaRecord {
  std::string header;
  std::string sequence;

  friend bool operator==(const FastaRecord&, const FastaRecord&) = default;
};

/// '>' starts a record; following lines are concatenated with all
/// whitespace removed. Case is preserved. Throws ParseError (1-based line)
/// on sequence data before the first header.
std::vector<FastaRecord> parse_fasta(std::string_view text);

/// Splits on Unicode whitespace, trims leading/trailing punctuation from
/// each token and drops tokens that end up empty. Case is preserved.
std::vector<std::string> tokenize(std::string_view text);

/// Parameters of the synthetic author-attribution corpus.
///
/// Every document is drawn character by character from a mixture of an
/// English-like background distribution (letters and spaces) and the
/// label's three signature letters, weighted 4:2:1. The signature is chosen
/// with probability skew / 2, so skew = 1 makes the first signature letter
/// the dominant character of every document.
struct SynthSpec {
  std::size_t n_labels = 4;
  std::size_t docs_per_label = 40;
  std::size_t doc_length = 400;
  double skew = 0.9;
  std::uint64_t seed = 1;

  /// Throws ConfigError for zero counts, skew outside (0, 1], or more
  /// labels than disjoint signatures available.
  void validate() const;
};

/// Number of disjoint signatures the generator can hand out.
std::size_t max_synth_labels() noexcept;

/// Signature letters of each label in a corpus produced from spec.
std::vector<std::string> synth_signatures(const SynthSpec& spec);

/// Deterministic in spec (including seed). Labels are "author0", ...
Corpus synth_corpus(const SynthSpec& spec);

/// Parses "labels=4,docs=40,len=400,skew=0.9[,seed=7]"; omitted keys keep
/// their defaults. Throws ConfigError.
SynthSpec parse_synth_spec(std::string_view text);

}  // namespace mfkc
