#ifndef MINLABEL_MMR_HPP
#define MINLABEL_MMR_HPP

#include "minlabel/embed.hpp"

#include <optional>
#include <span>
#include <vector>

namespace minlabel {

struct MMRParams {
    double lambda = 0.7;
    /// Number of candidates to keep; unset means full re-ranking (all).
    std::optional<std::size_t> select_n;

    void validate() const;
};

/// Normalized mean of all candidate rows: the relevance anchor when no
/// per-document query exists.
std::vector<float> centroid_query(const EmbeddingMatrix& candidates);

/// Greedy maximal-marginal-relevance ordering. The first pick is the pure
/// relevance argmax; step t then maximizes
///   lambda * cos(c_i, query) - (1 - lambda) * max_{s selected} cos(c_i, c_s)
/// over unselected i, ties broken by lowest index.
std::vector<std::size_t> mmr_select(const EmbeddingMatrix& candidates,
                                    std::span<const float> query, const MMRParams& params);

} // namespace minlabel

#endif
