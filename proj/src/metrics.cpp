#include "minlabel/metrics.hpp"

#include "minlabel/util.hpp"

#include <algorithm>
#include <cmath>

namespace minlabel {

namespace {

double norm_sq(std::span<const float> values) {
    double sum = 0.0;
    for (float x : values) sum += static_cast<double>(x) * static_cast<double>(x);
    return sum;
}

// Re-normalizes vectors whose norm drifted beyond 1e-6 from unit; the cosine
// reading of the coverage product only holds under unit norms.
void revalidate_unit(float* data, std::size_t count, std::size_t v, const char* what) {
    for (std::size_t i = 0; i < count; ++i) {
        std::span<const float> vec(data + i * v, v);
        double norm = std::sqrt(norm_sq(vec));
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw ValidationError(std::string(what) + " " + std::to_string(i) +
                                  " has zero or non-finite norm");
        }
        if (std::abs(norm - 1.0) > 1e-6) {
            log_warn(std::string(what) + " " + std::to_string(i) + " norm drifted to " +
                     format_double(norm) + "; re-normalizing");
            for (std::size_t d = 0; d < v; ++d) {
                data[i * v + d] = static_cast<float>(static_cast<double>(data[i * v + d]) / norm);
            }
        }
    }
}

} // namespace

void LabelMatrix::append(const std::string& label, std::span<const float> values) {
    if (k == 0 && v == 0) v = values.size();
    if (values.size() != v) {
        throw ValidationError("label row dimension mismatch");
    }
    rows.insert(rows.end(), values.begin(), values.end());
    labels.push_back(label);
    ++k;
}

void DocKeywordMatrix::append(std::span<const float> values) {
    if (c == 0 && v == 0) v = values.size();
    if (values.size() != v) {
        throw ValidationError("keyword column dimension mismatch");
    }
    cols.insert(cols.end(), values.begin(), values.end());
    ++c;
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) {
        throw ValidationError("cosine similarity dimension mismatch");
    }
    double na = norm_sq(a), nb = norm_sq(b);
    if (!(na > 0.0) || !(nb > 0.0)) {
        throw ValidationError("cosine similarity of zero-norm vector");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    }
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double redundancy(const LabelMatrix& labels) {
    if (labels.k < 2) {
        throw ValidationError("redundancy needs at least 2 labels, got " +
                              std::to_string(labels.k));
    }
    double best = -1.0;
    for (std::size_t i = 0; i < labels.k; ++i) {
        for (std::size_t j = i + 1; j < labels.k; ++j) {
            best = std::max(best, cosine_similarity(labels.row(i), labels.row(j)));
        }
    }
    return best;
}

CoverageMatrix coverage_matrix(const LabelMatrix& labels, const DocKeywordMatrix& doc) {
    if (labels.v != doc.v) {
        throw ValidationError("label dimension " + std::to_string(labels.v) +
                              " does not match document dimension " + std::to_string(doc.v));
    }
    if (labels.k == 0 || doc.c == 0) {
        throw ValidationError("coverage matrix needs nonempty labels and keywords");
    }

    LabelMatrix l = labels;
    DocKeywordMatrix d = doc;
    revalidate_unit(l.rows.data(), l.k, l.v, "label row");
    revalidate_unit(d.cols.data(), d.c, d.v, "keyword column");

    CoverageMatrix out;
    out.doc_id = doc.doc_id;
    out.k = l.k;
    out.c = d.c;
    out.w.resize(l.k * d.c);
    for (std::size_t i = 0; i < l.k; ++i) {
        std::span<const float> label = l.row(i);
        for (std::size_t j = 0; j < d.c; ++j) {
            std::span<const float> keyword = d.col(j);
            double dot = 0.0;
            for (std::size_t dim = 0; dim < l.v; ++dim) {
                dot += static_cast<double>(label[dim]) * static_cast<double>(keyword[dim]);
            }
            out.w[i * d.c + j] = std::clamp(dot, -1.0, 1.0);
        }
    }
    return out;
}

double document_coverage(const CoverageMatrix& w) {
    if (w.w.empty()) {
        throw ValidationError("document coverage of an empty matrix");
    }
    return *std::max_element(w.w.begin(), w.w.end());
}

double corpus_coverage(const std::vector<double>& per_doc) {
    if (per_doc.empty()) {
        throw ValidationError("corpus coverage of an empty corpus");
    }
    return pairwise_sum(per_doc) / static_cast<double>(per_doc.size());
}

} // namespace minlabel
