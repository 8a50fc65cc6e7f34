#ifndef MRLAB_MATRIX_HPP
#define MRLAB_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "mrlab/scalar.hpp"

namespace mrlab {

using Point = std::vector<Scalar>;

// Sparse matrix of exact scalars. No explicit zeros are stored, indices are
// bounds-checked and at most one entry per cell is allowed.
class SparseMatrix {
public:
    struct Entry {
        std::size_t row;
        std::size_t col;
        Scalar value;
    };

    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Entry>& entries() const { return entries_; }

    // Drops zeros silently; throws on out-of-range or duplicate cells.
    void set(std::size_t row, std::size_t col, Scalar value);

    static SparseMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);

    SparseMatrix transpose() const;

    std::vector<std::vector<Scalar>> dense() const;

    // Keeps the selected columns, renumbered to 0..selected.size()-1 in the
    // given order.
    SparseMatrix select_columns(const std::vector<std::size_t>& selected) const;

    friend SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Entry> entries_;  // sorted by (row, col)
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

// Exact rank over the scalar field. Fraction-free elimination on rows
// cleared of denominators, so intermediate values stay (Gaussian) integers.
std::size_t exact_rank(const SparseMatrix& mat);

// Rank of the matrix whose rows are the given points. Throws on mixed
// coordinate lengths.
std::size_t linear_dim(const std::vector<Point>& points);

// Dimension of the affine span: -1 for the empty set, 0 for a single point.
long affine_dim(const std::vector<Point>& points);

}  // namespace mrlab

#endif
