#include "mrlab/matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace mrlab {

void SparseMatrix::set(std::size_t row, std::size_t col, Scalar value) {
    if (row >= rows_ || col >= cols_) {
        throw std::invalid_argument("matrix entry out of bounds");
    }
    if (value.is_zero()) return;
    Entry entry{row, col, std::move(value)};
    auto pos = std::lower_bound(entries_.begin(), entries_.end(), entry,
                                [](const Entry& a, const Entry& b) {
                                    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
                                });
    if (pos != entries_.end() && pos->row == row && pos->col == col) {
        throw std::invalid_argument("duplicate matrix entry");
    }
    entries_.insert(pos, std::move(entry));
}

SparseMatrix SparseMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != cols) throw std::invalid_argument("ragged rows");
    }
    SparseMatrix out(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (!rows[i][j].is_zero()) out.set(i, j, rows[i][j]);
        }
    }
    return out;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix out(cols_, rows_);
    for (const auto& e : entries_) out.set(e.col, e.row, e.value);
    return out;
}

std::vector<std::vector<Scalar>> SparseMatrix::dense() const {
    std::vector<std::vector<Scalar>> out(rows_, std::vector<Scalar>(cols_));
    for (const auto& e : entries_) out[e.row][e.col] = e.value;
    return out;
}

SparseMatrix SparseMatrix::select_columns(const std::vector<std::size_t>& selected) const {
    std::map<std::size_t, std::size_t> remap;
    for (std::size_t j = 0; j < selected.size(); ++j) {
        if (selected[j] >= cols_) throw std::invalid_argument("selected column out of bounds");
        if (!remap.emplace(selected[j], j).second) {
            throw std::invalid_argument("column selected twice");
        }
    }
    SparseMatrix out(rows_, selected.size());
    for (const auto& e : entries_) {
        auto it = remap.find(e.col);
        if (it != remap.end()) out.set(e.row, it->second, e.value);
    }
    return out;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("inner dimensions differ");
    // b indexed by row for the accumulation pass
    std::vector<std::vector<std::pair<std::size_t, const Scalar*>>> b_rows(b.rows());
    for (const auto& e : b.entries()) b_rows[e.row].emplace_back(e.col, &e.value);

    std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
    for (const auto& ea : a.entries()) {
        for (const auto& [col, val] : b_rows[ea.col]) {
            acc[{ea.row, col}] += ea.value * *val;
        }
    }
    SparseMatrix out(a.rows(), b.cols());
    for (const auto& [cell, value] : acc) {
        if (!value.is_zero()) out.set(cell.first, cell.second, value);
    }
    return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    if (a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
        const auto& x = a.entries_[i];
        const auto& y = b.entries_[i];
        if (x.row != y.row || x.col != y.col || !(x.value == y.value)) return false;
    }
    return true;
}

namespace {

// Multiplies each row by the lcm of its entry denominators so elimination
// runs over (Gaussian) integers. Rescaling rows does not change the rank.
void clear_denominators(std::vector<std::vector<Scalar>>& work) {
    for (auto& row : work) {
        BigInt l(1);
        for (const auto& v : row) {
            l = lcm(l, v.real().get_den());
            l = lcm(l, v.imag().get_den());
        }
        if (l == 1) continue;
        Scalar factor{Rational(l)};
        for (auto& v : row) v = v * factor;
    }
}

}  // namespace

std::size_t exact_rank(const SparseMatrix& mat) {
    std::size_t m = mat.rows();
    std::size_t n = mat.cols();
    if (m == 0 || n == 0 || mat.entries().empty()) return 0;

    std::vector<std::vector<Scalar>> w = mat.dense();
    clear_denominators(w);

    // Bareiss one-step fraction-free elimination with row swaps; columns
    // without a pivot are skipped.
    std::size_t rank = 0;
    Scalar prev{1};
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t pivot_row = m;
        for (std::size_t i = rank; i < m; ++i) {
            if (!w[i][col].is_zero()) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row == m) continue;
        std::swap(w[rank], w[pivot_row]);
        const Scalar pivot = w[rank][col];
        for (std::size_t i = rank + 1; i < m; ++i) {
            if (w[i][col].is_zero()) {
                // Still rescale so the Bareiss exact-division identity keeps
                // holding for later steps.
                for (std::size_t j = col + 1; j < n; ++j) {
                    if (!w[i][j].is_zero()) w[i][j] = (pivot * w[i][j]) / prev;
                }
                continue;
            }
            const Scalar head = w[i][col];
            for (std::size_t j = col + 1; j < n; ++j) {
                w[i][j] = (pivot * w[i][j] - head * w[rank][j]) / prev;
            }
            w[i][col] = Scalar{};
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

std::size_t linear_dim(const std::vector<Point>& points) {
    if (points.empty()) return 0;
    std::size_t d = points.front().size();
    for (const auto& p : points) {
        if (p.size() != d) throw std::invalid_argument("points of mixed dimension");
    }
    return exact_rank(SparseMatrix::from_rows(points));
}

long affine_dim(const std::vector<Point>& points) {
    if (points.empty()) return -1;
    std::size_t d = points.front().size();
    std::vector<Point> diffs;
    diffs.reserve(points.size() - 1);
    const Point& origin = points.front();
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != d) throw std::invalid_argument("points of mixed dimension");
        Point diff(d);
        for (std::size_t j = 0; j < d; ++j) diff[j] = points[i][j] - origin[j];
        diffs.push_back(std::move(diff));
    }
    return static_cast<long>(linear_dim(diffs));
}

}  // namespace mrlab
