#ifndef MINLABEL_EMBED_HPP
#define MINLABEL_EMBED_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minlabel {

inline constexpr std::size_t kDefaultEmbeddingDim = 768;

/// Row-major n x v matrix of unit-norm float32 rows, one key per row.
struct EmbeddingMatrix {
    std::size_t n = 0;
    std::size_t v = 0;
    std::vector<float> data;       // n * v
    std::vector<std::string> keys; // size n

    std::span<const float> row(std::size_t i) const {
        return std::span<const float>(data.data() + i * v, v);
    }
    void append_row(const std::string& key, std::span<const float> values);
};

/// Scales to unit L2 norm; zero vectors are an error.
std::vector<float> normalize(std::span<const float> values);
double l2_norm(std::span<const float> values);

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::size_t dimension() const = 0;
    /// Stable identifier that participates in cache keys.
    virtual std::string id() const = 0;
    /// Raw backend output; callers normalize.
    virtual std::vector<float> embed(const std::string& text) = 0;
    /// Backends with true batch endpoints override this.
    virtual std::vector<std::vector<float>> embed_many(const std::vector<std::string>& texts);
};

/// Offline embedder: every token hashes to a seeded pseudo-random unit
/// vector and a text embeds as the normalized sum over its token multiset.
/// Texts sharing tokens land close; disjoint texts are near-orthogonal.
class StubEmbedder final : public Embedder {
public:
    explicit StubEmbedder(std::size_t dimension = kDefaultEmbeddingDim,
                          std::uint64_t seed = 0x5717ab1e5ULL);

    std::size_t dimension() const override { return dimension_; }
    std::string id() const override;
    std::vector<float> embed(const std::string& text) override;

private:
    std::size_t dimension_;
    std::uint64_t seed_;
};

/// Embeds one text through the backend, validates the dimension against
/// expected_v and unit-normalizes regardless of backend normalization.
std::vector<float> embed_text(const std::string& text, Embedder& backend,
                              std::size_t expected_v);

/// File-per-entry embedding cache, keyed by hash(text, backend id).
class EmbedCache {
public:
    explicit EmbedCache(std::string dir) : dir_(std::move(dir)) {}

    std::string key_for(const std::string& text, const std::string& backend_id) const;
    std::optional<std::vector<float>> lookup(const std::string& key) const;
    void store(const std::string& key, std::span<const float> values) const;

private:
    std::string dir_;
};

/// Embeds texts in input order with caching; uncached texts go to the
/// backend in chunks of batch_size.
EmbeddingMatrix embed_batch(const std::vector<std::string>& texts, Embedder& backend,
                            std::size_t expected_v, std::size_t batch_size,
                            const EmbedCache* cache = nullptr);

/// embeddings.bin: magic "AIEMB1", u32 n, u32 v (little-endian), then n*v
/// float32 values. Row keys go to a sidecar file, one per line.
void write_embeddings(const EmbeddingMatrix& matrix, const std::string& bin_path,
                      const std::string& keys_path);
EmbeddingMatrix read_embeddings(const std::string& bin_path, const std::string& keys_path);

} // namespace minlabel

#endif
