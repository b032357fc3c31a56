#include "minlabel/corpus.hpp"

#include "minlabel/prng.hpp"
#include "minlabel/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace minlabel {

namespace {

using ordered_json = nlohmann::ordered_json;

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

Document document_from_json(const ordered_json& j, std::size_t line_no) {
    if (!j.is_object()) {
        throw ParseError("line " + std::to_string(line_no) + ": record is not an object");
    }
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": missing or empty \"id\"");
    }
    if (!j.contains("text") || !j["text"].is_string() || j["text"].get<std::string>().empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": missing or empty \"text\"");
    }
    Document doc;
    doc.id = j["id"].get<std::string>();
    doc.text = j["text"].get<std::string>();
    if (j.contains("date") && !j["date"].is_null()) {
        std::string date = j["date"].get<std::string>();
        if (!is_iso_date(date)) {
            throw ParseError("line " + std::to_string(line_no) + ": bad date \"" + date +
                             "\" (expected YYYY-MM-DD)");
        }
        doc.date = date;
    }
    if (j.contains("manual_label") && !j["manual_label"].is_null()) {
        doc.manual_label = j["manual_label"].get<std::string>();
    }
    if (j.contains("meta") && !j["meta"].is_null()) {
        for (const auto& [key, value] : j["meta"].items()) {
            doc.meta[key] = value.get<std::string>();
        }
    }
    return doc;
}

ordered_json document_to_json(const Document& doc) {
    ordered_json j;
    j["id"] = doc.id;
    j["text"] = doc.text;
    if (doc.date) j["date"] = *doc.date;
    if (doc.manual_label) j["manual_label"] = *doc.manual_label;
    if (!doc.meta.empty()) {
        ordered_json meta = ordered_json::object();
        for (const auto& [key, value] : doc.meta) meta[key] = value;
        j["meta"] = meta;
    }
    return j;
}

Corpus load_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingArtifactError("cannot open corpus file: " + path);
    }
    Corpus corpus;
    corpus.name = path;
    std::string line;
    std::size_t line_no = 0;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed json record");
        }
        Document doc = document_from_json(j, line_no);
        if (!seen.insert(doc.id).second) {
            throw ParseError("duplicate document id \"" + doc.id + "\" at line " +
                             std::to_string(line_no));
        }
        corpus.documents.push_back(std::move(doc));
    }
    if (corpus.documents.empty()) {
        throw ParseError("empty corpus file: " + path);
    }
    return corpus;
}

// RFC 4180 row reader: quoted fields may hold commas, quotes ("" escape)
// and newlines.
std::optional<std::vector<std::string>> read_csv_row(std::istream& in, std::size_t& line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++line_no;
                field.push_back(ch);
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\r') {
            // swallow; \r\n handled at \n
        } else if (ch == '\n') {
            ++line_no;
            fields.push_back(std::move(field));
            return fields;
        } else {
            field.push_back(ch);
        }
    }
    if (in_quotes) {
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted csv field");
    }
    if (!any) return std::nullopt;
    fields.push_back(std::move(field));
    return fields;
}

Corpus load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingArtifactError("cannot open corpus file: " + path);
    }
    std::size_t line_no = 1;
    auto header = read_csv_row(in, line_no);
    if (!header) {
        throw ParseError("empty corpus file: " + path);
    }
    int id_col = -1, text_col = -1, date_col = -1, label_col = -1;
    std::vector<std::pair<int, std::string>> meta_cols;
    for (std::size_t i = 0; i < header->size(); ++i) {
        const std::string& name = (*header)[i];
        if (name == "id") id_col = static_cast<int>(i);
        else if (name == "text") text_col = static_cast<int>(i);
        else if (name == "date") date_col = static_cast<int>(i);
        else if (name == "manual_label") label_col = static_cast<int>(i);
        else meta_cols.emplace_back(static_cast<int>(i), name);
    }
    if (id_col < 0 || text_col < 0) {
        throw ParseError("csv header must contain \"id\" and \"text\" columns: " + path);
    }

    Corpus corpus;
    corpus.name = path;
    std::unordered_set<std::string> seen;
    while (auto row = read_csv_row(in, line_no)) {
        if (row->size() == 1 && (*row)[0].empty()) continue; // trailing blank line
        if (row->size() != header->size()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header->size()) + " fields, got " +
                             std::to_string(row->size()));
        }
        Document doc;
        doc.id = (*row)[static_cast<std::size_t>(id_col)];
        doc.text = (*row)[static_cast<std::size_t>(text_col)];
        if (doc.id.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty \"id\"");
        }
        if (doc.text.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty \"text\"");
        }
        if (date_col >= 0 && !(*row)[static_cast<std::size_t>(date_col)].empty()) {
            std::string date = (*row)[static_cast<std::size_t>(date_col)];
            if (!is_iso_date(date)) {
                throw ParseError("line " + std::to_string(line_no) + ": bad date \"" + date + "\"");
            }
            doc.date = date;
        }
        if (label_col >= 0 && !(*row)[static_cast<std::size_t>(label_col)].empty()) {
            doc.manual_label = (*row)[static_cast<std::size_t>(label_col)];
        }
        for (const auto& [col, name] : meta_cols) {
            const std::string& value = (*row)[static_cast<std::size_t>(col)];
            if (!value.empty()) doc.meta[name] = value;
        }
        if (!seen.insert(doc.id).second) {
            throw ParseError("duplicate document id \"" + doc.id + "\" at line " +
                             std::to_string(line_no));
        }
        corpus.documents.push_back(std::move(doc));
    }
    if (corpus.documents.empty()) {
        throw ParseError("empty corpus file: " + path);
    }
    return corpus;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::size_t count_raw_tokens(const std::string& text) {
    std::size_t count = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        bool ws = std::isspace(c) != 0;
        if (!ws && !in_word) ++count;
        in_word = !ws;
    }
    return count;
}

} // namespace

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    if (!all_digits(s.substr(0, 4)) || !all_digits(s.substr(5, 2)) || !all_digits(s.substr(8, 2)))
        return false;
    int month = std::stoi(s.substr(5, 2));
    int day = std::stoi(s.substr(8, 2));
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

Corpus load_corpus(const std::string& path, CorpusFormat format) {
    switch (format) {
        case CorpusFormat::Jsonl: return load_jsonl(path);
        case CorpusFormat::Csv: return load_csv(path);
    }
    throw ConfigError("unknown corpus format");
}

std::string corpus_to_jsonl(const Corpus& corpus) {
    std::string out;
    for (const Document& doc : corpus.documents) {
        out += document_to_json(doc).dump();
        out.push_back('\n');
    }
    return out;
}

void save_corpus_jsonl(const Corpus& corpus, const std::string& path) {
    write_file(path, corpus_to_jsonl(corpus));
}

void save_corpus_csv(const Corpus& corpus, const std::string& path) {
    // Meta keys are unioned into extra columns, sorted for a stable header.
    std::vector<std::string> meta_keys;
    for (const Document& doc : corpus.documents) {
        for (const auto& [key, _] : doc.meta) {
            if (std::find(meta_keys.begin(), meta_keys.end(), key) == meta_keys.end()) {
                meta_keys.push_back(key);
            }
        }
    }
    std::sort(meta_keys.begin(), meta_keys.end());

    std::ostringstream out;
    out << "id,text,date,manual_label";
    for (const std::string& key : meta_keys) out << "," << csv_escape(key);
    out << "\n";
    for (const Document& doc : corpus.documents) {
        out << csv_escape(doc.id) << "," << csv_escape(doc.text) << ","
            << (doc.date ? *doc.date : "") << ","
            << csv_escape(doc.manual_label ? *doc.manual_label : "");
        for (const std::string& key : meta_keys) {
            auto it = doc.meta.find(key);
            out << "," << csv_escape(it != doc.meta.end() ? it->second : "");
        }
        out << "\n";
    }
    write_file(path, out.str());
}

Corpus filter_corpus(const Corpus& corpus, const FilterSpec& spec) {
    if (spec.date_min && spec.date_max && *spec.date_min > *spec.date_max) {
        throw ValidationError("filter date_min exceeds date_max");
    }
    Corpus out;
    out.name = corpus.name;
    for (const Document& doc : corpus.documents) {
        if (doc.date) {
            if (spec.date_min && *doc.date < *spec.date_min) continue;
            if (spec.date_max && *doc.date > *spec.date_max) continue;
        }
        bool excluded = false;
        for (const auto& [key, value] : spec.exclude_meta) {
            auto it = doc.meta.find(key);
            if (it != doc.meta.end() && it->second == value) {
                excluded = true;
                break;
            }
        }
        if (excluded) continue;
        if (spec.min_raw_tokens && count_raw_tokens(doc.text) < *spec.min_raw_tokens) continue;
        out.documents.push_back(doc);
    }
    return out;
}

std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, std::size_t holdout_n,
                                       std::uint64_t seed) {
    if (holdout_n > corpus.size()) {
        throw ValidationError("holdout_n " + std::to_string(holdout_n) +
                              " exceeds corpus size " + std::to_string(corpus.size()));
    }
    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(seed);
    rng.shuffle(order);

    std::vector<bool> in_holdout(corpus.size(), false);
    for (std::size_t i = 0; i < holdout_n; ++i) in_holdout[order[i]] = true;

    Corpus train, holdout;
    train.name = corpus.name + ":train";
    holdout.name = corpus.name + ":holdout";
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        (in_holdout[i] ? holdout : train).documents.push_back(corpus.documents[i]);
    }
    return {std::move(train), std::move(holdout)};
}

} // namespace minlabel
