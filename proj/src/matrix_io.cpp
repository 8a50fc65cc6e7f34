#include "mrlab/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace mrlab {

std::string matrix_to_text(const SparseMatrix& matrix, FieldTag field) {
    std::ostringstream out;
    out << matrix.rows() << ' ' << matrix.cols() << ' ' << field_name(field) << '\n';
    for (const auto& entry : matrix.entries()) {
        out << entry.row + 1 << ' ' << entry.col + 1 << ' ' << entry.value.str() << '\n';
    }
    return out.str();
}

LoadedMatrix matrix_from_text(const std::string& bytes, const std::string& where) {
    const std::string prefix = where.empty() ? "matrix" : where;
    std::istringstream in(bytes);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(prefix + ": empty input");
    }

    LoadedMatrix loaded;
    {
        std::istringstream header(line);
        std::size_t rows = 0, cols = 0;
        std::string field;
        if (!(header >> rows >> cols >> field)) {
            throw ParseError(prefix + ": header must be \"rows cols field\", got \"" + line +
                             "\"");
        }
        std::string rest;
        if (header >> rest) {
            throw ParseError(prefix + ": trailing tokens in header \"" + line + "\"");
        }
        loaded.field = parse_field(field);
        loaded.matrix = SparseMatrix(rows, cols);
    }

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::size_t row = 0, col = 0;
        std::string value;
        std::string rest;
        if (!(fields >> row >> col >> value) || (fields >> rest)) {
            throw ParseError(prefix + ":" + std::to_string(lineno) +
                             ": expected \"row col value\", got \"" + line + "\"");
        }
        if (row == 0 || col == 0) {
            throw ParseError(prefix + ":" + std::to_string(lineno) +
                             ": indices are 1-based");
        }
        Scalar scalar;
        try {
            scalar = Scalar::parse(value);
        } catch (const ParseError& err) {
            throw ParseError(prefix + ":" + std::to_string(lineno) + ": " + err.what());
        }
        if (loaded.field == FieldTag::Rational && scalar.has_imag()) {
            throw ParseError(prefix + ":" + std::to_string(lineno) +
                             ": imaginary entry in a rational matrix");
        }
        try {
            loaded.matrix.set(row - 1, col - 1, scalar);
        } catch (const std::exception& err) {
            throw ParseError(prefix + ":" + std::to_string(lineno) + ": " + err.what());
        }
    }
    return loaded;
}

LoadedMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path + ": cannot open");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return matrix_from_text(buffer.str(), path);
}

}  // namespace mrlab
