#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "mrlab/matrix.hpp"
#include "mrlab/matrix_io.hpp"
#include "mrlab/rng.hpp"
#include "mrlab/scalar.hpp"
#include "oracles.hpp"

using namespace mrlab;

namespace {

std::vector<std::vector<Scalar>> dense_of(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Scalar>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<Scalar> r;
        r.reserve(row.size());
        for (long v : row) {
            r.push_back(Scalar(v));
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Point> points_of(const std::vector<std::vector<long>>& rows) {
    return dense_of(rows);
}

}  // namespace

TEST_CASE("scalar string round trips stay canonical") {
    CHECK(Scalar::parse("3/4").str() == "3/4");
    CHECK(Scalar::parse("-2").str() == "-2");
    CHECK(Scalar::parse("0").str() == "0");
    CHECK(Scalar::parse("2/4").str() == "1/2");     // reduced
    CHECK(Scalar::parse("1/2+3/4i").str() == "1/2+3/4i");
    CHECK(Scalar::parse("i").str() == "1i");        // unit imaginary accepted on input
    CHECK(Scalar::parse("-i").str() == "-1i");
    CHECK(Scalar::parse("7i").str() == "7i");
    CHECK(Scalar::parse("2-i").str() == "2-1i");
    CHECK(make_rational(BigInt(-4), BigInt(-6)) == make_rational(BigInt(2), BigInt(3)));

    // parse(str()) is the identity on a batch of random gaussians
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto draw = [&rng]() {
            return make_rational(BigInt(static_cast<long>(rng.below(41)) - 20),
                                 BigInt(static_cast<long>(rng.below(9)) + 1));
        };
        const Scalar value(draw(), draw());
        CHECK(Scalar::parse(value.str()) == value);
    }
}

TEST_CASE("scalar parser rejects junk") {
    CHECK_THROWS_AS(Scalar::parse(""), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1.5"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(" 1"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1 "), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1e3"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("0x10"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("++1"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1+"), ParseError);
    CHECK_THROWS_AS(Scalar::parse("i+1i"), ParseError);
}

TEST_CASE("gaussian arithmetic") {
    const Scalar a = Scalar::parse("1+2i");
    const Scalar b = Scalar::parse("3-i");
    CHECK((a * b).str() == "5+5i");
    CHECK((a + b).str() == "4+1i");
    CHECK((a - b).str() == "-2+3i");
    CHECK(a.conj().str() == "1-2i");
    CHECK(a.norm() == Rational(5));
    CHECK(((a / b) * b) == a);
    CHECK_THROWS(a / Scalar(0));
}

TEST_CASE("exact_rank on pinned matrices") {
    SparseMatrix identity(2, 2);
    identity.set(0, 0, Scalar(1));
    identity.set(1, 1, Scalar(1));
    CHECK(exact_rank(identity) == 2);

    CHECK(exact_rank(SparseMatrix(3, 4)) == 0);
    CHECK(exact_rank(SparseMatrix()) == 0);

    const auto mat = SparseMatrix::from_rows(
        dense_of({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}));
    CHECK(exact_rank(mat) == 2);
}

TEST_CASE("exact_rank over the gaussian field") {
    // second row is i * first row
    SparseMatrix mat(2, 2);
    mat.set(0, 0, Scalar(1));
    mat.set(0, 1, Scalar(Rational(0), Rational(1)));
    mat.set(1, 0, Scalar(Rational(0), Rational(1)));
    mat.set(1, 1, Scalar(-1));
    CHECK(exact_rank(mat) == 1);
}

TEST_CASE("exact_rank agrees with the minor-expansion oracle") {
    SplitMix64 rng(202);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng.below(6);
        const std::size_t cols = 1 + rng.below(6);
        std::vector<std::vector<Scalar>> dense(rows, std::vector<Scalar>(cols));
        if (trial % 3 == 0) {
            // random entries in [-5, 5]
            for (auto& row : dense) {
                for (auto& cell : row) {
                    cell = Scalar(static_cast<long>(rng.below(11)) - 5);
                }
            }
        } else {
            // forced low rank: product of (rows x r) and (r x cols)
            const std::size_t r = 1 + rng.below(3);
            std::vector<std::vector<long>> left(rows, std::vector<long>(r));
            std::vector<std::vector<long>> right(r, std::vector<long>(cols));
            for (auto& row : left) {
                for (auto& cell : row) {
                    cell = static_cast<long>(rng.below(7)) - 3;
                }
            }
            for (auto& row : right) {
                for (auto& cell : row) {
                    cell = static_cast<long>(rng.below(7)) - 3;
                }
            }
            for (std::size_t i = 0; i < rows; ++i) {
                for (std::size_t j = 0; j < cols; ++j) {
                    long acc = 0;
                    for (std::size_t k = 0; k < r; ++k) {
                        acc += left[i][k] * right[k][j];
                    }
                    dense[i][j] = Scalar(acc);
                }
            }
        }
        const auto mat = SparseMatrix::from_rows(dense);
        const std::size_t fast = exact_rank(mat);
        const std::size_t slow = oracles::rank_minors(dense);
        CHECK(fast == slow);
        CHECK(exact_rank(mat.transpose()) == slow);
    }
}

TEST_CASE("exact_rank is invariant under row scaling and permutation") {
    SplitMix64 rng(303);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = 2 + rng.below(5);
        const std::size_t cols = 2 + rng.below(5);
        std::vector<std::vector<Scalar>> dense(rows, std::vector<Scalar>(cols));
        for (auto& row : dense) {
            for (auto& cell : row) {
                cell = Scalar(static_cast<long>(rng.below(11)) - 5);
            }
        }
        const std::size_t base = exact_rank(SparseMatrix::from_rows(dense));

        auto scaled = dense;
        for (auto& row : scaled) {
            const Rational factor =
                make_rational(BigInt(static_cast<long>(rng.below(9)) + 1),
                              BigInt(static_cast<long>(rng.below(4)) + 1));
            const Scalar s{factor};
            for (auto& cell : row) {
                cell = s * cell;
            }
        }
        CHECK(exact_rank(SparseMatrix::from_rows(scaled)) == base);

        auto permuted = dense;
        for (std::size_t i = permuted.size(); i > 1; --i) {
            std::swap(permuted[i - 1], permuted[rng.below(i)]);
        }
        CHECK(exact_rank(SparseMatrix::from_rows(permuted)) == base);
    }
}

TEST_CASE("linear_dim and affine_dim on pinned point sets") {
    CHECK(linear_dim({}) == 0);
    CHECK(linear_dim(points_of({{1, 1}, {2, 2}})) == 1);
    CHECK(linear_dim(points_of({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}})) == 2);

    CHECK(affine_dim({}) == -1);
    CHECK(affine_dim(points_of({{5, 7}})) == 0);
    CHECK(affine_dim(points_of({{0, 0}, {1, 0}, {2, 0}, {3, 0}})) == 1);
    CHECK(affine_dim(points_of({{0, 0}, {1, 0}, {0, 1}})) == 2);

    CHECK_THROWS_AS(linear_dim(points_of({{1, 2}, {1, 2, 3}})), std::invalid_argument);
}

TEST_CASE("affine_dim stays within one of linear_dim") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t count = 1 + rng.below(8);
        const std::size_t d = 1 + rng.below(4);
        std::vector<Point> pts(count, Point(d));
        for (auto& p : pts) {
            for (auto& c : p) {
                c = Scalar(static_cast<long>(rng.below(7)) - 3);
            }
        }
        const std::size_t lin = linear_dim(pts);
        const long aff = affine_dim(pts);
        CHECK(aff <= static_cast<long>(lin));
        CHECK(aff + 1 >= static_cast<long>(lin));
    }
}

TEST_CASE("sparse matrix plumbing") {
    SparseMatrix mat(2, 3);
    mat.set(0, 1, Scalar(5));
    mat.set(1, 2, Scalar(Rational(-1, 2)));
    mat.set(0, 0, Scalar(0));  // dropped
    CHECK(mat.entries().size() == 2);
    CHECK_THROWS_AS(mat.set(0, 1, Scalar(7)), std::invalid_argument);  // duplicate cell
    CHECK_THROWS_AS(mat.set(2, 0, Scalar(1)), std::invalid_argument);  // row out of range
    CHECK_THROWS_AS(mat.set(0, 3, Scalar(1)), std::invalid_argument);  // col out of range

    const auto dense = mat.dense();
    CHECK(dense[0][1] == Scalar(5));
    CHECK(dense[1][2] == Scalar(Rational(-1, 2)));
    CHECK(SparseMatrix::from_rows(dense) == mat);

    const auto t = mat.transpose();
    CHECK(t.rows() == 3);
    CHECK(t.cols() == 2);
    CHECK(t.dense()[1][0] == Scalar(5));

    const auto sel = mat.select_columns({2, 0});
    CHECK(sel.cols() == 2);
    CHECK(sel.dense()[1][0] == Scalar(Rational(-1, 2)));
    CHECK(sel.dense()[0][1] == Scalar(0));
}

TEST_CASE("sparse multiply matches the naive dense product") {
    SplitMix64 rng(505);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t m = 1 + rng.below(5);
        const std::size_t k = 1 + rng.below(5);
        const std::size_t n = 1 + rng.below(5);
        std::vector<std::vector<Scalar>> a(m, std::vector<Scalar>(k));
        std::vector<std::vector<Scalar>> b(k, std::vector<Scalar>(n));
        for (auto& row : a) {
            for (auto& cell : row) {
                cell = Scalar(static_cast<long>(rng.below(7)) - 3);
            }
        }
        for (auto& row : b) {
            for (auto& cell : row) {
                cell = Scalar(static_cast<long>(rng.below(7)) - 3);
            }
        }
        const auto product =
            multiply(SparseMatrix::from_rows(a), SparseMatrix::from_rows(b)).dense();
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Scalar acc(0);
                for (std::size_t x = 0; x < k; ++x) {
                    acc += a[i][x] * b[x][j];
                }
                CHECK(product[i][j] == acc);
            }
        }
    }
}

TEST_CASE("matrix text format round trips") {
    SparseMatrix mat(3, 4);
    mat.set(0, 0, Scalar(Rational(1, 3)));
    mat.set(2, 3, Scalar(-7));
    const std::string text = matrix_to_text(mat, FieldTag::Rational);
    const auto loaded = matrix_from_text(text);
    CHECK(loaded.field == FieldTag::Rational);
    CHECK(loaded.matrix == mat);

    SparseMatrix gmat(1, 2);
    gmat.set(0, 1, Scalar(Rational(0), Rational(-2)));
    const auto gloaded = matrix_from_text(matrix_to_text(gmat, FieldTag::Gaussian));
    CHECK(gloaded.field == FieldTag::Gaussian);
    CHECK(gloaded.matrix == gmat);
}

TEST_CASE("matrix text parser rejects malformed input") {
    CHECK_THROWS_AS(matrix_from_text(""), ParseError);
    CHECK_THROWS_AS(matrix_from_text("2 2\n"), ParseError);              // short header
    CHECK_THROWS_AS(matrix_from_text("2 2 integer\n"), ParseError);      // bad field
    CHECK_THROWS_AS(matrix_from_text("2 2 rational\n0 1 5\n"), ParseError);   // 0-based
    CHECK_THROWS_AS(matrix_from_text("2 2 rational\n1 1 5 9\n"), ParseError); // trailing
    CHECK_THROWS_AS(matrix_from_text("2 2 rational\n1 1 i\n"), ParseError);   // field purity
    CHECK_THROWS_AS(matrix_from_text("2 2 rational\n1 1 5\n1 1 6\n"), ParseError);
    CHECK_THROWS_AS(matrix_from_text("2 2 rational\n3 1 5\n"), ParseError);   // out of range
}
