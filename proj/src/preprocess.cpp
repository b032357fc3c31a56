#include "minlabel/preprocess.hpp"

#include "minlabel/util.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <sstream>
#include <unordered_set>

namespace minlabel {

namespace {

struct Word {
    std::string raw;   // as it appeared, punctuation attached
    std::string core;  // raw with non-alphanumeric edges stripped
    bool capitalized = false;
};

std::string strip_edges(const std::string& raw) {
    std::size_t begin = 0, end = raw.size();
    while (begin < end && !std::isalnum(static_cast<unsigned char>(raw[begin]))) ++begin;
    while (end > begin && !std::isalnum(static_cast<unsigned char>(raw[end - 1]))) --end;
    return raw.substr(begin, end - begin);
}

std::vector<std::vector<Word>> split_sentences(const std::string& text) {
    std::vector<std::vector<Word>> sentences;
    std::vector<Word> current;
    std::istringstream in(text);
    std::string raw;
    while (in >> raw) {
        Word w;
        w.raw = raw;
        w.core = strip_edges(raw);
        w.capitalized = !w.core.empty() && std::isupper(static_cast<unsigned char>(w.core[0]));
        current.push_back(std::move(w));
        char last = raw.back();
        if (last == '.' || last == '!' || last == '?') {
            sentences.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) sentences.push_back(std::move(current));
    return sentences;
}

} // namespace

double DFTable::at(const std::string& term) const {
    auto it = fraction.find(term);
    if (it == fraction.end()) {
        throw ValidationError("token \"" + term +
                              "\" absent from DF table (pipeline stage mismatch)");
    }
    return it->second;
}

void PreprocessConfig::validate() const {
    if (!(df_low >= 0.0 && df_low < df_high && df_high <= 1.0)) {
        throw ConfigError("df band must satisfy 0 <= df_low < df_high <= 1");
    }
}

std::unordered_set<std::string> load_wordlist(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingArtifactError("cannot open word list: " + path);
    }
    std::unordered_set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        words.insert(lowercase(line));
    }
    return words;
}

PreprocessConfig load_preprocess_config(const std::string& data_dir) {
    PreprocessConfig cfg;
    cfg.stopwords = load_wordlist(data_dir + "/stopwords.txt");
    cfg.org_suffixes = load_wordlist(data_dir + "/org_suffixes.txt");
    cfg.number_words = load_wordlist(data_dir + "/number_words.txt");
    return cfg;
}

std::string strip_urls(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        bool url = text.compare(i, 7, "http://") == 0 || text.compare(i, 8, "https://") == 0 ||
                   text.compare(i, 4, "www.") == 0;
        if (url) {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        } else {
            out.push_back(text[i]);
            ++i;
        }
    }
    return out;
}

std::string strip_non_ascii(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        if (c < 128) out.push_back(static_cast<char>(c));
    }
    return out;
}

std::string remove_proper_nouns(const std::string& text,
                                const std::unordered_set<std::string>& org_suffixes) {
    std::vector<std::vector<Word>> sentences = split_sentences(text);

    // Surface forms seen capitalized anywhere but sentence start.
    std::unordered_set<std::string> mid_sentence_caps;
    for (const auto& sentence : sentences) {
        for (std::size_t i = 1; i < sentence.size(); ++i) {
            if (sentence[i].capitalized) mid_sentence_caps.insert(sentence[i].core);
        }
    }

    std::string out;
    for (const auto& sentence : sentences) {
        std::vector<bool> drop(sentence.size(), false);
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            const Word& w = sentence[i];
            if (!w.capitalized) continue;
            bool suffix_left = i > 0 && org_suffixes.count(lowercase(sentence[i - 1].core)) > 0;
            bool suffix_right = i + 1 < sentence.size() &&
                                org_suffixes.count(lowercase(sentence[i + 1].core)) > 0;
            if (suffix_left || suffix_right) {
                drop[i] = true;
                if (suffix_left) drop[i - 1] = true;
                if (suffix_right) drop[i + 1] = true;
                continue;
            }
            if (i > 0) {
                drop[i] = true;
            } else if (mid_sentence_caps.count(w.core) > 0) {
                drop[i] = true;
            }
        }
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            if (drop[i]) continue;
            if (!out.empty()) out.push_back(' ');
            out += sentence[i].raw;
        }
    }
    return out;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&]() {
        std::size_t begin = 0, end = current.size();
        while (begin < end && current[begin] == '-') ++begin;
        while (end > begin && current[end - 1] == '-') --end;
        if (end > begin) {
            std::string tok = current.substr(begin, end - begin);
            if (tok[0] >= 'a' && tok[0] <= 'z') tokens.push_back(std::move(tok));
        }
        current.clear();
    };
    for (unsigned char c : text) {
        char lower = static_cast<char>(std::tolower(c));
        if ((lower >= 'a' && lower <= 'z') || (lower >= '0' && lower <= '9') || lower == '-') {
            current.push_back(lower);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

DFTable compute_document_frequencies(const std::vector<std::vector<std::string>>& docs_tokens) {
    if (docs_tokens.empty()) {
        throw ValidationError("document frequencies require a nonempty corpus");
    }
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& tokens : docs_tokens) {
        std::unordered_set<std::string> distinct(tokens.begin(), tokens.end());
        for (const auto& term : distinct) ++counts[term];
    }
    DFTable table;
    table.corpus_size = docs_tokens.size();
    table.fraction.reserve(counts.size());
    double n = static_cast<double>(docs_tokens.size());
    for (const auto& [term, count] : counts) {
        table.fraction[term] = static_cast<double>(count) / n;
    }
    return table;
}

std::vector<std::string> df_stage_tokens(const Document& doc, const PreprocessConfig& cfg) {
    std::string text = strip_urls(doc.text);
    text = strip_non_ascii(text);
    text = remove_proper_nouns(text, cfg.org_suffixes);
    return tokenize(text);
}

DFTable build_df_table(const Corpus& corpus, const PreprocessConfig& cfg) {
    std::vector<std::vector<std::string>> docs_tokens;
    docs_tokens.reserve(corpus.size());
    for (const Document& doc : corpus.documents) {
        docs_tokens.push_back(df_stage_tokens(doc, cfg));
    }
    return compute_document_frequencies(docs_tokens);
}

std::vector<std::string> df_filter(const std::vector<std::string>& tokens, const DFTable& df,
                                   const PreprocessConfig& cfg) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& token : tokens) {
        double f = df.at(token);
        if (f < cfg.df_low || f > cfg.df_high) continue;
        out.push_back(token);
    }
    return out;
}

CleanDocument preprocess_document(const Document& doc, const DFTable& df,
                                  const PreprocessConfig& cfg) {
    std::vector<std::string> tokens = df_stage_tokens(doc, cfg);
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (std::string& token : tokens) {
        if (cfg.stopwords.count(token) > 0) continue;
        if (cfg.number_words.count(token) > 0) continue;
        kept.push_back(std::move(token));
    }
    kept = df_filter(kept, df, cfg);

    CleanDocument clean;
    clean.id = doc.id;
    clean.source_id = doc.id;
    clean.tokens = std::move(kept);
    clean.token_count = clean.tokens.size();
    return clean;
}

std::vector<CleanDocument> preprocess_corpus(const Corpus& corpus, const DFTable& df,
                                             const PreprocessConfig& cfg, int jobs) {
    std::vector<CleanDocument> out(corpus.size());
    if (jobs <= 1 || corpus.size() < 32) {
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            out[i] = preprocess_document(corpus.documents[i], df, cfg);
        }
        return out;
    }
    std::size_t n_chunks = std::min<std::size_t>(static_cast<std::size_t>(jobs), corpus.size());
    std::vector<std::future<void>> futures;
    futures.reserve(n_chunks);
    for (std::size_t chunk = 0; chunk < n_chunks; ++chunk) {
        futures.push_back(std::async(std::launch::async, [&, chunk]() {
            for (std::size_t i = chunk; i < corpus.size(); i += n_chunks) {
                out[i] = preprocess_document(corpus.documents[i], df, cfg);
            }
        }));
    }
    for (auto& f : futures) f.get();
    return out;
}

} // namespace minlabel
