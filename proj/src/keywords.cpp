#include "minlabel/keywords.hpp"

#include "minlabel/util.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace minlabel {

namespace {

struct TermStats {
    std::size_t tf = 0;
    std::size_t tf_upper = 0;    // cased occurrences away from sentence start
    std::size_t tf_acronym = 0;  // all-caps occurrences
    std::vector<std::size_t> sentence_indices;
    std::unordered_set<std::string> left_distinct, right_distinct;
    std::size_t left_total = 0, right_total = 0;
    double score = 0.0;
};

bool is_all_caps(const std::string& token) {
    bool has_alpha = false;
    for (unsigned char c : token) {
        if (std::isalpha(c)) {
            has_alpha = true;
            if (!std::isupper(c)) return false;
        }
    }
    return has_alpha;
}

double median_of_sorted(std::vector<std::size_t>& values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return static_cast<double>(values[n / 2]);
    return 0.5 * static_cast<double>(values[n / 2 - 1] + values[n / 2]);
}

} // namespace

void ExtractorParams::validate() const {
    if (max_ngram < 1) throw ConfigError("max_ngram must be >= 1");
    if (window < 1) throw ConfigError("window must be >= 1");
    if (!(dedup_threshold > 0.0 && dedup_threshold <= 1.0)) {
        throw ConfigError("dedup_threshold must be in (0, 1]");
    }
}

int keyword_budget(std::size_t token_count) {
    if (token_count < 60) return 1;
    if (token_count <= 85) return 2;
    return 3;
}

double edit_similarity(const std::string& a, const std::string& b) {
    if (a == b) return 1.0;
    std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) return 0.0;
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    double dist = static_cast<double>(prev[m]);
    return 1.0 - dist / static_cast<double>(std::max(n, m));
}

YakeExtractor::YakeExtractor(ExtractorParams params, std::unordered_set<std::string> stopwords)
    : params_(params), stopwords_(std::move(stopwords)) {
    params_.validate();
}

std::vector<Keyword> YakeExtractor::extract(const CleanDocument& doc, int budget) const {
    return extract_from_sentences({doc.tokens}, budget, doc.id);
}

std::vector<Keyword> YakeExtractor::extract_from_sentences(
    const std::vector<std::vector<std::string>>& sentences, int budget,
    const std::string& doc_id) const {
    if (budget < 1) throw ValidationError("keyword budget must be >= 1");

    std::size_t total_tokens = 0;
    for (const auto& s : sentences) total_tokens += s.size();
    if (total_tokens == 0) return {};

    // Term-level statistics. Terms are keyed case-insensitively; casing
    // counters come from the literal tokens (neutral on lowercased input).
    std::unordered_map<std::string, TermStats> terms;
    const std::size_t window = static_cast<std::size_t>(params_.window);
    for (std::size_t si = 0; si < sentences.size(); ++si) {
        const auto& sent = sentences[si];
        for (std::size_t ti = 0; ti < sent.size(); ++ti) {
            std::string key = lowercase(sent[ti]);
            TermStats& st = terms[key];
            ++st.tf;
            st.sentence_indices.push_back(si);
            if (ti > 0 && std::isupper(static_cast<unsigned char>(sent[ti][0]))) ++st.tf_upper;
            if (is_all_caps(sent[ti])) ++st.tf_acronym;
            for (std::size_t w = 1; w <= window && w <= ti; ++w) {
                st.left_distinct.insert(lowercase(sent[ti - w]));
                ++st.left_total;
            }
            for (std::size_t w = 1; w <= window && ti + w < sent.size(); ++w) {
                st.right_distinct.insert(lowercase(sent[ti + w]));
                ++st.right_total;
            }
        }
    }

    double max_tf = 0.0, mean_tf = 0.0;
    for (const auto& [_, st] : terms) {
        max_tf = std::max(max_tf, static_cast<double>(st.tf));
        mean_tf += static_cast<double>(st.tf);
    }
    mean_tf /= static_cast<double>(terms.size());
    double var_tf = 0.0;
    for (const auto& [_, st] : terms) {
        double d = static_cast<double>(st.tf) - mean_tf;
        var_tf += d * d;
    }
    var_tf /= static_cast<double>(terms.size());
    double std_tf = std::sqrt(var_tf);

    const double n_sentences = static_cast<double>(sentences.size());
    for (auto& [_, st] : terms) {
        double tf = static_cast<double>(st.tf);
        double w_case =
            static_cast<double>(std::max(st.tf_upper, st.tf_acronym)) / (1.0 + std::log(tf));
        std::vector<std::size_t> sent_idx = st.sentence_indices;
        double w_pos = std::log(std::log(3.0 + median_of_sorted(sent_idx)));
        double w_freq = tf / (mean_tf + std_tf);
        double dl = st.left_total == 0 ? 0.0
                                       : static_cast<double>(st.left_distinct.size()) /
                                             static_cast<double>(st.left_total);
        double dr = st.right_total == 0 ? 0.0
                                        : static_cast<double>(st.right_distinct.size()) /
                                              static_cast<double>(st.right_total);
        double w_rel = 1.0 + (dl + dr) * tf / max_tf;
        std::size_t distinct_sentences =
            std::unordered_set<std::size_t>(st.sentence_indices.begin(), st.sentence_indices.end())
                .size();
        double w_spread = static_cast<double>(distinct_sentences) / n_sentences;
        st.score = (w_rel * w_pos) / (w_case + w_freq / w_rel + w_spread / w_rel);
    }

    // Candidate n-grams: contiguous within a sentence, never starting or
    // ending with a stopword. map keeps candidate order deterministic.
    struct Candidate {
        std::size_t tf = 0;
        double term_product = 1.0;
        double term_sum = 0.0;
    };
    std::map<std::string, Candidate> candidates;
    const std::size_t max_ngram = static_cast<std::size_t>(params_.max_ngram);
    for (const auto& sent : sentences) {
        for (std::size_t begin = 0; begin < sent.size(); ++begin) {
            for (std::size_t len = 1; len <= max_ngram && begin + len <= sent.size(); ++len) {
                std::string first = lowercase(sent[begin]);
                std::string last = lowercase(sent[begin + len - 1]);
                if (stopwords_.count(first) > 0 || stopwords_.count(last) > 0) continue;
                std::string phrase = first;
                for (std::size_t k = 1; k < len; ++k) {
                    phrase += ' ';
                    phrase += lowercase(sent[begin + k]);
                }
                Candidate& cand = candidates[phrase];
                if (cand.tf == 0) {
                    for (std::size_t k = 0; k < len; ++k) {
                        const TermStats& st = terms.at(lowercase(sent[begin + k]));
                        cand.term_product *= st.score;
                        cand.term_sum += st.score;
                    }
                }
                ++cand.tf;
            }
        }
    }

    std::vector<Keyword> scored;
    scored.reserve(candidates.size());
    for (const auto& [phrase, cand] : candidates) {
        double score =
            cand.term_product / (static_cast<double>(cand.tf) * (1.0 + cand.term_sum));
        scored.push_back(Keyword{phrase, score, doc_id});
    }
    std::sort(scored.begin(), scored.end(), [](const Keyword& a, const Keyword& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.phrase < b.phrase;
    });

    std::vector<Keyword> kept;
    for (const Keyword& kw : scored) {
        if (static_cast<int>(kept.size()) >= budget) break;
        bool duplicate = false;
        for (const Keyword& existing : kept) {
            if (edit_similarity(existing.phrase, kw.phrase) >= params_.dedup_threshold) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) kept.push_back(kw);
    }
    return kept;
}

std::vector<Keyword> extract_keywords(const CleanDocument& doc, int budget,
                                      const ExtractorParams& params) {
    return YakeExtractor(params).extract(doc, budget);
}

std::vector<Keyword> unique_keywords(const std::vector<Keyword>& all) {
    std::unordered_map<std::string, Keyword> best;
    for (const Keyword& kw : all) {
        auto it = best.find(kw.phrase);
        if (it == best.end() || kw.score < it->second.score) {
            best[kw.phrase] = kw;
        }
    }
    std::vector<Keyword> out;
    out.reserve(best.size());
    for (auto& [_, kw] : best) out.push_back(std::move(kw));
    std::sort(out.begin(), out.end(), [](const Keyword& a, const Keyword& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.phrase < b.phrase;
    });
    return out;
}

} // namespace minlabel
