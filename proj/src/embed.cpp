#include "minlabel/embed.hpp"

#include "minlabel/preprocess.hpp"
#include "minlabel/prng.hpp"
#include "minlabel/util.hpp"

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace minlabel {

namespace {
constexpr char kMagic[6] = {'A', 'I', 'E', 'M', 'B', '1'};

void append_u32_le(std::string& out, std::uint32_t value) {
    for (int shift = 0; shift < 32; shift += 8) {
        out.push_back(static_cast<char>((value >> shift) & 0xff));
    }
}

std::uint32_t read_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
} // namespace

void EmbeddingMatrix::append_row(const std::string& key, std::span<const float> values) {
    if (n == 0 && v == 0) v = values.size();
    if (values.size() != v) {
        throw ValidationError("row dimension " + std::to_string(values.size()) +
                              " does not match matrix dimension " + std::to_string(v));
    }
    data.insert(data.end(), values.begin(), values.end());
    keys.push_back(key);
    ++n;
}

double l2_norm(std::span<const float> values) {
    double sum = 0.0;
    for (float x : values) sum += static_cast<double>(x) * static_cast<double>(x);
    return std::sqrt(sum);
}

std::vector<float> normalize(std::span<const float> values) {
    double norm = l2_norm(values);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ValidationError("cannot normalize zero or non-finite vector");
    }
    std::vector<float> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = static_cast<float>(static_cast<double>(values[i]) / norm);
    }
    return out;
}

std::vector<std::vector<float>> Embedder::embed_many(const std::vector<std::string>& texts) {
    std::vector<std::vector<float>> out;
    out.reserve(texts.size());
    for (const std::string& text : texts) out.push_back(embed(text));
    return out;
}

StubEmbedder::StubEmbedder(std::size_t dimension, std::uint64_t seed)
    : dimension_(dimension), seed_(seed) {}

std::string StubEmbedder::id() const {
    return "stub-v1-d" + std::to_string(dimension_) + "-s" + to_hex(seed_);
}

std::vector<float> StubEmbedder::embed(const std::string& text) {
    std::vector<std::string> tokens = tokenize(text);
    if (tokens.empty()) {
        // Texts with no alphabetic tokens still need a stable direction.
        tokens.push_back("empty");
    }
    std::vector<double> sum(dimension_, 0.0);
    std::vector<double> token_vec(dimension_);
    for (const std::string& token : tokens) {
        SplitMix64 rng(fnv1a64(token) ^ seed_);
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < dimension_; ++i) {
            token_vec[i] = rng.next_signed();
            norm_sq += token_vec[i] * token_vec[i];
        }
        double inv = 1.0 / std::sqrt(norm_sq);
        for (std::size_t i = 0; i < dimension_; ++i) sum[i] += token_vec[i] * inv;
    }
    double norm_sq = 0.0;
    for (double x : sum) norm_sq += x * x;
    if (norm_sq == 0.0) {
        sum[0] = 1.0;
        norm_sq = 1.0;
    }
    double inv = 1.0 / std::sqrt(norm_sq);
    std::vector<float> out(dimension_);
    for (std::size_t i = 0; i < dimension_; ++i) out[i] = static_cast<float>(sum[i] * inv);
    return out;
}

std::vector<float> embed_text(const std::string& text, Embedder& backend,
                              std::size_t expected_v) {
    if (text.empty()) throw ValidationError("cannot embed empty text");
    std::vector<float> raw = backend.embed(text);
    if (raw.size() != expected_v) {
        throw ValidationError("backend returned " + std::to_string(raw.size()) +
                              " dimensions, expected " + std::to_string(expected_v));
    }
    return normalize(raw);
}

std::string EmbedCache::key_for(const std::string& text, const std::string& backend_id) const {
    std::uint64_t h = fnv1a64(text);
    h = fnv1a64("\x1f", h);
    h = fnv1a64(backend_id, h);
    return to_hex(h);
}

std::optional<std::vector<float>> EmbedCache::lookup(const std::string& key) const {
    std::string path = dir_ + "/" + key + ".json";
    if (!file_exists(path)) return std::nullopt;
    nlohmann::json j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded() || !j.contains("values")) {
        log_warn("ignoring corrupt embed cache entry: " + path);
        return std::nullopt;
    }
    return j["values"].get<std::vector<float>>();
}

void EmbedCache::store(const std::string& key, std::span<const float> values) const {
    nlohmann::json j;
    j["values"] = std::vector<float>(values.begin(), values.end());
    write_file(dir_ + "/" + key + ".json", j.dump());
}

EmbeddingMatrix embed_batch(const std::vector<std::string>& texts, Embedder& backend,
                            std::size_t expected_v, std::size_t batch_size,
                            const EmbedCache* cache) {
    if (texts.empty()) throw ValidationError("embed_batch requires a nonempty text list");
    if (batch_size == 0) batch_size = 1;

    std::vector<std::optional<std::vector<float>>> rows(texts.size());
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (cache) {
            auto hit = cache->lookup(cache->key_for(texts[i], backend.id()));
            if (hit) {
                if (hit->size() != expected_v) {
                    throw ValidationError("cached embedding dimension mismatch for text index " +
                                          std::to_string(i));
                }
                rows[i] = std::move(*hit);
                continue;
            }
        }
        missing.push_back(i);
    }

    for (std::size_t begin = 0; begin < missing.size(); begin += batch_size) {
        std::size_t end = std::min(missing.size(), begin + batch_size);
        std::vector<std::string> chunk;
        chunk.reserve(end - begin);
        for (std::size_t k = begin; k < end; ++k) chunk.push_back(texts[missing[k]]);
        std::vector<std::vector<float>> raw = backend.embed_many(chunk);
        if (raw.size() != chunk.size()) {
            throw ValidationError("backend returned " + std::to_string(raw.size()) +
                                  " embeddings for a batch of " + std::to_string(chunk.size()));
        }
        for (std::size_t k = begin; k < end; ++k) {
            const std::vector<float>& r = raw[k - begin];
            if (r.size() != expected_v) {
                throw ValidationError("backend returned " + std::to_string(r.size()) +
                                      " dimensions, expected " + std::to_string(expected_v));
            }
            std::vector<float> unit = normalize(r);
            if (cache) cache->store(cache->key_for(texts[missing[k]], backend.id()), unit);
            rows[missing[k]] = std::move(unit);
        }
    }

    EmbeddingMatrix matrix;
    matrix.v = expected_v;
    matrix.data.reserve(texts.size() * expected_v);
    for (std::size_t i = 0; i < texts.size(); ++i) {
        matrix.append_row(texts[i], *rows[i]);
    }
    return matrix;
}

void write_embeddings(const EmbeddingMatrix& matrix, const std::string& bin_path,
                      const std::string& keys_path) {
    if (matrix.keys.size() != matrix.n || matrix.data.size() != matrix.n * matrix.v) {
        throw ValidationError("inconsistent embedding matrix");
    }
    std::string out;
    out.reserve(6 + 8 + matrix.data.size() * 4);
    out.append(kMagic, sizeof(kMagic));
    append_u32_le(out, static_cast<std::uint32_t>(matrix.n));
    append_u32_le(out, static_cast<std::uint32_t>(matrix.v));
    for (float value : matrix.data) {
        std::uint32_t bits;
        static_assert(sizeof(bits) == sizeof(value));
        std::memcpy(&bits, &value, sizeof(bits));
        append_u32_le(out, bits);
    }
    write_file(bin_path, out);

    std::string keys;
    for (const std::string& key : matrix.keys) {
        keys += key;
        keys.push_back('\n');
    }
    write_file(keys_path, keys);
}

EmbeddingMatrix read_embeddings(const std::string& bin_path, const std::string& keys_path) {
    std::string raw = read_file(bin_path);
    if (raw.size() < 14 || std::memcmp(raw.data(), kMagic, sizeof(kMagic)) != 0) {
        throw ParseError("bad embedding file header: " + bin_path);
    }
    const unsigned char* p = reinterpret_cast<const unsigned char*>(raw.data());
    std::uint32_t n = read_u32_le(p + 6);
    std::uint32_t v = read_u32_le(p + 10);
    std::size_t expected = 14 + static_cast<std::size_t>(n) * v * 4;
    if (raw.size() != expected) {
        throw ParseError("embedding file size mismatch: " + bin_path);
    }
    EmbeddingMatrix matrix;
    matrix.n = n;
    matrix.v = v;
    matrix.data.resize(static_cast<std::size_t>(n) * v);
    for (std::size_t i = 0; i < matrix.data.size(); ++i) {
        std::uint32_t bits = read_u32_le(p + 14 + i * 4);
        float value;
        std::memcpy(&value, &bits, sizeof(value));
        matrix.data[i] = value;
    }
    std::string keys_raw = read_file(keys_path);
    for (const std::string& line : split(keys_raw, '\n')) {
        if (!line.empty()) matrix.keys.push_back(line);
    }
    if (matrix.keys.size() != matrix.n) {
        throw ParseError("key sidecar lists " + std::to_string(matrix.keys.size()) +
                         " keys for " + std::to_string(matrix.n) + " rows: " + keys_path);
    }
    return matrix;
}

} // namespace minlabel
