#ifndef MINLABEL_METRICS_HPP
#define MINLABEL_METRICS_HPP

#include <span>
#include <string>
#include <vector>

namespace minlabel {

/// k x v label matrix, rows unit-norm, row labels attached.
struct LabelMatrix {
    std::size_t k = 0;
    std::size_t v = 0;
    std::vector<float> rows;          // row-major k * v
    std::vector<std::string> labels;  // size k

    std::span<const float> row(std::size_t i) const {
        return std::span<const float>(rows.data() + i * v, v);
    }
    void append(const std::string& label, std::span<const float> values);
};

/// v x c per-document keyword matrix, columns unit-norm. Stored column-major
/// so each keyword vector stays contiguous.
struct DocKeywordMatrix {
    std::string doc_id;
    std::size_t v = 0;
    std::size_t c = 0;
    std::vector<float> cols; // column-major v * c

    std::span<const float> col(std::size_t j) const {
        return std::span<const float>(cols.data() + j * v, v);
    }
    void append(std::span<const float> values);
};

/// k x c alignment matrix for one document; entry (i, j) is the cosine
/// similarity of label i and keyword j.
struct CoverageMatrix {
    std::string doc_id;
    std::size_t k = 0;
    std::size_t c = 0;
    std::vector<double> w; // row-major k * c

    double at(std::size_t i, std::size_t j) const { return w[i * c + j]; }
};

double cosine_similarity(std::span<const float> a, std::span<const float> b);

/// Maximum pairwise cosine similarity among label rows; needs k >= 2.
double redundancy(const LabelMatrix& labels);

/// Matrix product of labels and document keywords. Inputs are re-validated
/// unit-norm and re-normalized (with a warning) if drift exceeds 1e-6.
CoverageMatrix coverage_matrix(const LabelMatrix& labels, const DocKeywordMatrix& doc);

/// Document coverage: the maximum entry of its coverage matrix.
double document_coverage(const CoverageMatrix& w);

/// Corpus coverage: arithmetic mean of document coverages (pairwise sum).
double corpus_coverage(const std::vector<double>& per_doc);

} // namespace minlabel

#endif
