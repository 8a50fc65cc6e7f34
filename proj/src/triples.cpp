#include "mrlab/triples.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <utility>

namespace mrlab {

namespace {

// Idempotent Latin square of odd order r: L(i, j) = (i + j) * (r + 1) / 2
// mod r. Idempotent because (2i)(r+1)/2 = i(r+1) = i (mod r).
std::vector<std::vector<std::size_t>> odd_idempotent_square(std::size_t r) {
    const std::size_t half = (r + 1) / 2;
    std::vector<std::vector<std::size_t>> square(r, std::vector<std::size_t>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            square[i][j] = ((i + j) * half) % r;
        }
    }
    return square;
}

// Idempotent Latin square of even order r >= 4 by prolongation: take the
// odd square of order m = r - 1, and extend it along the transversal
// {(i, (i+1) mod m)}. The transversal is a genuine one: cell (i, i+1)
// holds (2i+1)(m+1)/2, which runs over all residues as i does, and its
// cells meet every row and every column once. The diagonal is untouched,
// and the new cell (m, m) holds the new symbol, so idempotence survives.
std::vector<std::vector<std::size_t>> even_idempotent_square(std::size_t r) {
    const std::size_t m = r - 1;
    std::vector<std::vector<std::size_t>> square = odd_idempotent_square(m);
    for (auto& row : square) {
        row.resize(r, 0);
    }
    square.emplace_back(r, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = (i + 1) % m;
        square[i][r - 1] = square[i][j];
        square[r - 1][j] = square[i][j];
        square[i][j] = m;
    }
    square[r - 1][r - 1] = m;
    return square;
}

TripleSystem from_latin_square(std::size_t r) {
    const auto square = (r % 2 == 1) ? odd_idempotent_square(r)
                                     : even_idempotent_square(r);
    TripleSystem system;
    system.ground = r;
    system.triples.reserve(r * r - r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) {
                continue;
            }
            system.triples.push_back({i + 1, j + 1, square[i][j] + 1});
        }
    }
    return system;
}

// The sum-zero family {(a,b,c) distinct : a+b+c = 0 mod r}. Correct for
// r = 3 and kept as the cheap first attempt; for larger r it comes up
// short of r^2 - r triples and is discarded by the verification gate.
TripleSystem sum_zero_family(std::size_t r) {
    TripleSystem system;
    system.ground = r;
    for (std::size_t a = 1; a <= r; ++a) {
        for (std::size_t b = 1; b <= r; ++b) {
            if (b == a) {
                continue;
            }
            const std::size_t c = ((3 * r - a - b - 1) % r) + 1;
            if (c == a || c == b) {
                continue;
            }
            system.triples.push_back({a, b, c});
        }
    }
    return system;
}

}  // namespace

TripleCheck verify_triples(const TripleSystem& system) {
    TripleCheck check;
    const std::size_t r = system.ground;
    if (r < 3) {
        check.violation = "ground set has " + std::to_string(r) + " elements, need at least 3";
        return check;
    }
    const std::size_t expected = r * r - r;
    if (system.triples.size() != expected) {
        check.violation = "expected " + std::to_string(expected) + " triples, found " +
                          std::to_string(system.triples.size());
        return check;
    }

    std::set<std::array<std::size_t, 3>> seen;
    std::vector<std::size_t> element_count(r + 1, 0);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_count;
    for (const auto& triple : system.triples) {
        for (std::size_t e : triple) {
            if (e < 1 || e > r) {
                check.violation = "element " + std::to_string(e) + " outside 1.." +
                                  std::to_string(r);
                return check;
            }
        }
        if (triple[0] == triple[1] || triple[0] == triple[2] || triple[1] == triple[2]) {
            check.violation = "triple (" + std::to_string(triple[0]) + "," +
                              std::to_string(triple[1]) + "," + std::to_string(triple[2]) +
                              ") repeats an element";
            return check;
        }
        if (!seen.insert(triple).second) {
            check.violation = "triple (" + std::to_string(triple[0]) + "," +
                              std::to_string(triple[1]) + "," + std::to_string(triple[2]) +
                              ") occurs twice";
            return check;
        }
        for (std::size_t e : triple) {
            ++element_count[e];
        }
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = a + 1; b < 3; ++b) {
                const auto key = std::minmax(triple[a], triple[b]);
                ++pair_count[key];
            }
        }
    }

    const std::size_t per_element = 3 * (r - 1);
    for (std::size_t e = 1; e <= r; ++e) {
        if (element_count[e] != per_element) {
            check.violation = "element " + std::to_string(e) + " appears in " +
                              std::to_string(element_count[e]) + " triples, expected " +
                              std::to_string(per_element);
            return check;
        }
    }
    for (const auto& [key, count] : pair_count) {
        if (count > 6) {
            check.violation = "pair {" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + "} appears in " +
                              std::to_string(count) + " triples, allowed at most 6";
            return check;
        }
    }
    check.ok = true;
    return check;
}

TripleSystem build_triples(std::size_t r) {
    if (r < 3) {
        throw std::invalid_argument("build_triples: need r >= 3, got " + std::to_string(r));
    }

    static std::mutex cache_mutex;
    static std::map<std::size_t, TripleSystem> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(r);
        if (it != cache.end()) {
            return it->second;
        }
    }

    TripleSystem system = sum_zero_family(r);
    if (!verify_triples(system).ok) {
        system = from_latin_square(r);
    }
    const TripleCheck check = verify_triples(system);
    if (!check.ok) {
        throw std::logic_error("build_triples: construction for r = " + std::to_string(r) +
                               " failed verification: " + check.violation);
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(r, std::move(system)).first->second;
}

DesignParams audit_design(const SparseMatrix& matrix) {
    DesignParams params;
    std::vector<std::size_t> row_support(matrix.rows(), 0);
    std::vector<std::size_t> col_support(matrix.cols(), 0);
    std::vector<std::vector<std::size_t>> row_cols(matrix.rows());
    for (const auto& entry : matrix.entries()) {
        ++row_support[entry.row];
        ++col_support[entry.col];
        row_cols[entry.row].push_back(entry.col);
    }
    for (std::size_t support : row_support) {
        params.q = std::max(params.q, support);
    }
    params.k = matrix.cols() == 0 ? 0
                                  : *std::min_element(col_support.begin(), col_support.end());

    // |supp(C_a) cap supp(C_b)| counted row by row: a row meets the
    // intersection of a column pair exactly when both entries are nonzero
    // in that row.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> overlap;
    for (const auto& cols : row_cols) {
        for (std::size_t a = 0; a < cols.size(); ++a) {
            for (std::size_t b = a + 1; b < cols.size(); ++b) {
                ++overlap[{cols[a], cols[b]}];
            }
        }
    }
    for (const auto& [pair, count] : overlap) {
        params.t = std::max(params.t, count);
    }
    return params;
}

Rational design_rank_bound(std::size_t n, const DesignParams& params) {
    if (params.k == 0) {
        throw std::invalid_argument("design_rank_bound: k = 0 gives no certificate");
    }
    const BigInt numerator = BigInt(n) * BigInt(params.t) * BigInt(params.q) *
                             BigInt(params.q - 1);
    return Rational(BigInt(n)) - make_rational(numerator, BigInt(params.k));
}

}  // namespace mrlab
