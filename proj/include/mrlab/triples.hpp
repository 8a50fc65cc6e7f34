#ifndef MRLAB_TRIPLES_HPP
#define MRLAB_TRIPLES_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mrlab/matrix.hpp"

namespace mrlab {

// A system of ordered triples over the ground set {1, ..., r} with:
//   * exactly r^2 - r distinct triples,
//   * three distinct elements in every triple,
//   * every element appearing in exactly 3(r - 1) triples,
//   * every unordered pair appearing in at most 6 triples.
struct TripleSystem {
    std::size_t ground = 0;                             // r
    std::vector<std::array<std::size_t, 3>> triples;    // 1-based elements
};

// Deterministic construction for any r >= 3; the result always passes
// verify_triples (a failed verification aborts instead of returning junk).
// Systems are cached per r, so repeated calls are cheap.
TripleSystem build_triples(std::size_t r);

struct TripleCheck {
    bool ok = false;
    std::string violation;    // human-readable first violation when !ok
};

// Decision procedure for the four properties above.
TripleCheck verify_triples(const TripleSystem& system);

// Support statistics of a matrix viewed as a design:
//   q = max nonzero entries in a row,
//   k = min nonzero entries in a column,
//   t = max overlap of the supports of two distinct columns.
struct DesignParams {
    std::size_t q = 0;
    std::size_t k = 0;
    std::size_t t = 0;
};

DesignParams audit_design(const SparseMatrix& matrix);

// Rank certificate n - n*t*q*(q-1)/k for an n-column (q,k,t)-design, as an
// exact rational (may be negative, in which case it is vacuous).
Rational design_rank_bound(std::size_t n, const DesignParams& params);

}  // namespace mrlab

#endif
