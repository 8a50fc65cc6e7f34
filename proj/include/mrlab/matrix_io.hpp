#ifndef MRLAB_MATRIX_IO_HPP
#define MRLAB_MATRIX_IO_HPP

#include <string>

#include "mrlab/config.hpp"
#include "mrlab/matrix.hpp"

namespace mrlab {

// Sparse matrix text format: a header line "rows cols field" followed by
// one "row col value" line per nonzero entry, 1-based, sorted by (row, col).
// Values use the scalar string syntax of the declared field.

std::string matrix_to_text(const SparseMatrix& matrix, FieldTag field);

struct LoadedMatrix {
    SparseMatrix matrix;
    FieldTag field = FieldTag::Rational;
};

LoadedMatrix matrix_from_text(const std::string& bytes, const std::string& where = "");
LoadedMatrix load_matrix_file(const std::string& path);

}  // namespace mrlab

#endif
