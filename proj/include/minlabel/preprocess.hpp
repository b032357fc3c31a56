#ifndef MINLABEL_PREPROCESS_HPP
#define MINLABEL_PREPROCESS_HPP

#include "minlabel/corpus.hpp"

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace minlabel {

/// Preprocessed abstract: lowercase tokens, stopwords/numbers/rare/frequent
/// terms removed.
struct CleanDocument {
    std::string id;
    std::vector<std::string> tokens;
    std::size_t token_count = 0;
    std::string source_id;
};

/// Document-frequency fractions: df(t) = |{d : t in d}| / |corpus|.
struct DFTable {
    std::unordered_map<std::string, double> fraction;
    std::size_t corpus_size = 0;

    bool contains(const std::string& term) const { return fraction.count(term) > 0; }
    double at(const std::string& term) const;
};

struct PreprocessConfig {
    double df_low = 0.10;   // drop tokens with df strictly below
    double df_high = 0.75;  // drop tokens with df strictly above
    std::unordered_set<std::string> stopwords;
    std::unordered_set<std::string> org_suffixes; // lowercase, e.g. "university"
    std::unordered_set<std::string> number_words;

    void validate() const;
};

/// One lowercase term per line; '#' lines and blanks ignored.
std::unordered_set<std::string> load_wordlist(const std::string& path);

/// Loads stopwords.txt, org_suffixes.txt, number_words.txt from data_dir.
PreprocessConfig load_preprocess_config(const std::string& data_dir);

std::string strip_urls(const std::string& text);
std::string strip_non_ascii(const std::string& text);

/// Heuristic proper-noun removal on cased text. Rules: a capitalized token
/// mid-sentence is removed; capitalized tokens adjacent to an org suffix
/// (University, Institute, ...) are removed together with the suffix;
/// sentence-initial capitalized tokens are retained unless the same surface
/// form also appears capitalized mid-sentence elsewhere in the document.
std::string remove_proper_nouns(const std::string& text,
                                const std::unordered_set<std::string>& org_suffixes);

/// Lowercases, then splits on anything that is not [a-z0-9-]; intra-word
/// hyphens survive. Tokens must start with a letter.
std::vector<std::string> tokenize(const std::string& normalized_text);

/// df over token lists: fraction of lists containing each term at least once.
DFTable compute_document_frequencies(const std::vector<std::vector<std::string>>& docs_tokens);

/// Tokens of a raw document at the DF-measurement stage: URL strip, ASCII
/// strip, proper-noun removal, case normalization, tokenization. DF is
/// computed before stopword removal.
std::vector<std::string> df_stage_tokens(const Document& doc, const PreprocessConfig& cfg);

/// Pass 1 of the two-pass design: builds the DFTable for a corpus.
DFTable build_df_table(const Corpus& corpus, const PreprocessConfig& cfg);

/// Drops tokens outside the (df_low, df_high) band; order preserved. A token
/// absent from the table signals a pipeline-stage mismatch and is an error.
std::vector<std::string> df_filter(const std::vector<std::string>& tokens, const DFTable& df,
                                   const PreprocessConfig& cfg);

/// Pass 2: the full chain in fixed order: URL removal, non-ASCII strip,
/// proper-noun removal, case normalization, tokenization, stopword removal,
/// number-word removal, df filter.
CleanDocument preprocess_document(const Document& doc, const DFTable& df,
                                  const PreprocessConfig& cfg);

std::vector<CleanDocument> preprocess_corpus(const Corpus& corpus, const DFTable& df,
                                             const PreprocessConfig& cfg, int jobs = 1);

} // namespace minlabel

#endif
