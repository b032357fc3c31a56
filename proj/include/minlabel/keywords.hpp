#ifndef MINLABEL_KEYWORDS_HPP
#define MINLABEL_KEYWORDS_HPP

#include "minlabel/preprocess.hpp"

#include <string>
#include <unordered_set>
#include <vector>

namespace minlabel {

/// Scored keyphrase. Lower score = more relevant.
struct Keyword {
    std::string phrase;  // 1-3 tokens, space-joined
    double score = 0.0;
    std::string doc_id;
};

struct ExtractorParams {
    int max_ngram = 3;
    int window = 2;              // co-occurrence window for term relatedness
    double dedup_threshold = 0.9; // normalized edit-similarity collapse bound

    void validate() const;
};

/// Per-document keyword budget: 1 below 60 tokens, 2 at 60-85, 3 above 85.
int keyword_budget(std::size_t token_count);

/// Pluggable extractor surface; the shipped implementation is YakeExtractor.
class KeywordExtractor {
public:
    virtual ~KeywordExtractor() = default;
    virtual std::vector<Keyword> extract(const CleanDocument& doc, int budget) const = 0;
};

/// Statistical keyphrase extractor. Scores each term by casing, position,
/// normalized frequency, relatedness to context and sentence dispersion;
/// a candidate n-gram scores product(term scores) / (tf * (1 + sum)).
/// Near-duplicate phrases (normalized edit similarity >= dedup_threshold)
/// collapse onto the lower score.
class YakeExtractor final : public KeywordExtractor {
public:
    explicit YakeExtractor(ExtractorParams params = {},
                           std::unordered_set<std::string> stopwords = {});

    std::vector<Keyword> extract(const CleanDocument& doc, int budget) const override;

    /// Core entry point: sentence-segmented tokens. The CleanDocument
    /// overload wraps its flat token list as a single sentence.
    std::vector<Keyword> extract_from_sentences(
        const std::vector<std::vector<std::string>>& sentences, int budget,
        const std::string& doc_id) const;

private:
    ExtractorParams params_;
    std::unordered_set<std::string> stopwords_;
};

/// Convenience wrapper over a default-constructed YakeExtractor.
std::vector<Keyword> extract_keywords(const CleanDocument& doc, int budget,
                                      const ExtractorParams& params = {});

/// Phrase-distinct set keeping the minimum score per phrase; output ordered
/// by (score, phrase).
std::vector<Keyword> unique_keywords(const std::vector<Keyword>& all);

/// Normalized Levenshtein similarity in [0, 1]; 1 means identical.
double edit_similarity(const std::string& a, const std::string& b);

} // namespace minlabel

#endif
