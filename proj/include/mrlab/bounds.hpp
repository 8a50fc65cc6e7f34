#ifndef MRLAB_BOUNDS_HPP
#define MRLAB_BOUNDS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrlab/config.hpp"
#include "mrlab/scalar.hpp"

namespace mrlab {

// Raised when a requested bound needs a hypothesis the configuration does
// not satisfy (e.g. delta* = 0 leaves no admissible epsilon).
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// Size-driven split of the color indices. With c = 1/(delta - eps), index
// j is large when |V_j| >= c * (|V_{j+1}| + ... + |V_n|); the last index is
// large by convention (its tail is empty, so the inequality is vacuous).
// Block i spans colors d_{i-1}+1 .. d_i where d_1 < ... < d_k are the large
// indices (1-based, d_k = n).
struct EpsilonDecomposition {
    Rational delta;
    Rational eps;
    Rational c_eps;                           // 1 / (delta - eps)
    std::vector<bool> is_large;               // [j-1] for color j
    std::vector<std::size_t> large_indices;   // increasing, ends with n
    struct Block {
        std::size_t lo = 0;    // first color of the block, 1-based
        std::size_t hi = 0;    // last color = a large index
    };
    std::vector<Block> blocks;
};

// Requires positive nonincreasing sizes and 0 < eps < delta <= 1.
EpsilonDecomposition classify_indices(const std::vector<std::size_t>& sizes,
                                      const Rational& delta, const Rational& eps);

// Exact check of the geometric tail estimates the decomposition guarantees:
// inside a block ending at large index y, for every offset i < y - lo(block),
//   |V_{y-i}| + ... + |V_n| <= 2 * (1 + c)^i * |V_y|,
// and consequently |V_y| >= (sum of the block sizes) / (2 * (1+c)^{gap}).
struct TailReport {
    struct Item {
        std::size_t block = 0;       // 1-based block number
        std::size_t offset = 0;      // i in the estimate
        BigInt tail_sum;             // left side (an integer)
        Rational allowance;          // right side
        bool ok = false;
    };
    std::vector<Item> items;
    struct BlockFloor {
        std::size_t block = 0;
        std::size_t vy = 0;          // |V_{d_i}|
        Rational floor;              // block sum / (2 * (1+c)^{gap})
        bool ok = false;
    };
    std::vector<BlockFloor> floors;
    bool ok = false;
};

TailReport verify_tail_bound(const EpsilonDecomposition& decomposition,
                             const std::vector<std::size_t>& sizes);

// The dimension bounds computed from sizes alone.
//   recursion: m_0 = 0, m_i = 2 m_{i-1} + (24/eps) (1+c)^{d_i - d_{i-1} - 1}
//   b_rec  = m_k
//   b_sum  = (24/eps) * sum_i 2^{k-i} (1+c)^{d_i - d_{i-1} - 1}
//   b_coarse = (24 k / eps) * (2/(2+eps))^k * (1+c)^n
// b_rec and b_sum agree identically; b_sum <= b_coarse needs delta <= 1.
struct BoundValues {
    EpsilonDecomposition decomposition;
    std::vector<Rational> per_block;     // the additive term of each step
    std::vector<Rational> recursion;     // m_1, ..., m_k
    Rational b_rec;
    Rational b_sum;
    Rational b_coarse;
};

BoundValues bound_from_sizes(const std::vector<std::size_t>& sizes,
                             const Rational& delta, const Rational& eps);

// Bounds combined with the measured dimensions of one configuration.
// measured[i] is the rank of the points of colors 1..d_{i+1} stacked as rows
// (the span of the first i+1 blocks); block_dim[i] is the rank of block i+1
// alone. Throws HypothesisError when delta* = 0 or delta > delta*.
struct BoundReport {
    BoundValues values;
    Rational delta_star;                   // measured (lenient) delta*
    std::vector<std::size_t> measured;     // nested span ranks
    std::vector<std::size_t> block_dim;    // per-block ranks
    std::size_t dim_v = 0;                 // rank of all points
    long adim_v = 0;                       // affine dimension of all points
    bool step_chain_ok = false;   // measured[i] <= measured[i-1] + block_dim[i]
    bool adim_le_dim = false;
    bool dim_le_rec = false;
    bool rec_eq_sum = false;
    bool sum_le_coarse = false;
    BoundValues half_eps;                  // same sizes at eps = delta/2
    bool ok = false;
};

BoundReport theorem_bound(const ColoredConfig& config, const Rational& delta,
                          const Rational& eps);

// Scans eps over {g * delta / (grid+1) : g = 1..grid} plus delta/2 and
// returns the report minimizing b_rec (ties to the smaller eps).
std::pair<Rational, BoundReport> optimize_epsilon(const ColoredConfig& config,
                                                  const Rational& delta, std::size_t grid);

// The coarse closed form f(k) = (24 k / eps) (2/(2+eps))^k as a function of
// a real k peaks at k* = -1 / ln(2/(2+eps)). k* is the single number in the
// toolkit computed in floating point; it is only used to pick the two
// integer neighbors, which are then compared exactly.
struct CoarseReport {
    Rational eps;
    double k_star = 0.0;
    std::size_t k_lo = 0, k_hi = 0;        // floor/ceil neighbors (>= 1)
    Rational f_lo, f_hi, f_max;
    // With delta supplied: the comparison chain 2/(1+c) < 2/(2+eps) used to
    // coarsen the recursion, i.e. c > 1 + eps.
    bool has_chain = false;
    Rational c_eps;
    bool chain_ok = false;
};

CoarseReport coarse_constants(const Rational& eps,
                              const std::optional<Rational>& delta = std::nullopt);

// (1 + c)^e and friends; exponentiation by a nonnegative machine integer.
Rational rational_pow(const Rational& base, std::size_t exponent);

}  // namespace mrlab

#endif
