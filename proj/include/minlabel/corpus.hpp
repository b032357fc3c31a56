#ifndef MINLABEL_CORPUS_HPP
#define MINLABEL_CORPUS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace minlabel {

/// One raw abstract plus provenance metadata.
struct Document {
    std::string id;
    std::string text;
    std::optional<std::string> date;          // ISO-8601 "YYYY-MM-DD"
    std::optional<std::string> manual_label;
    std::map<std::string, std::string> meta;  // e.g. directorate, agency
};

struct Corpus {
    std::string name;
    std::vector<Document> documents;

    std::size_t size() const { return documents.size(); }
};

/// Predicates applied by filter_corpus. Documents lacking a date pass the
/// date window vacuously.
struct FilterSpec {
    std::optional<std::string> date_min;
    std::optional<std::string> date_max;
    std::vector<std::pair<std::string, std::string>> exclude_meta;
    std::optional<std::size_t> min_raw_tokens;
};

enum class CorpusFormat { Jsonl, Csv };

/// Loads a corpus, preserving file order. Duplicate ids and malformed
/// records are errors (the message carries the offending line number).
Corpus load_corpus(const std::string& path, CorpusFormat format);

/// Canonical jsonl writer: one document per line, fixed key order, compact
/// separators. persist(load(f)) is byte-identical for files in this form.
void save_corpus_jsonl(const Corpus& corpus, const std::string& path);
std::string corpus_to_jsonl(const Corpus& corpus);

/// CSV writer used for round-trip tests of the csv ingestion path.
void save_corpus_csv(const Corpus& corpus, const std::string& path);

Corpus filter_corpus(const Corpus& corpus, const FilterSpec& spec);

/// Seeded uniform shuffle (SplitMix64) then prefix take; both parts keep
/// the original file order internally.
std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, std::size_t holdout_n,
                                       std::uint64_t seed);

/// Validates "YYYY-MM-DD". Zero-padded ISO dates compare correctly as strings.
bool is_iso_date(const std::string& s);

} // namespace minlabel

#endif
