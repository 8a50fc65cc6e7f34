#ifndef MRLAB_ASSEMBLY_HPP
#define MRLAB_ASSEMBLY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mrlab/config.hpp"
#include "mrlab/delta.hpp"
#include "mrlab/matrix.hpp"
#include "mrlab/triples.hpp"

namespace mrlab {

// A maximal line is extraordinary for a partition when it carries at least
// one point of the middle part P2 and at least three points of P1 u P2.
// The P1 u P2 members on it are its associated points, listed in increasing
// line-parameter order; P3 members are retained separately but carry no
// coefficients.
struct ExtraordinaryLine {
    LineRecord line;
    std::vector<PointRef> associated;
    std::vector<Scalar> parameters;    // aligned with associated
    std::vector<PointRef> omitted;     // P3 members of the line
};

std::vector<ExtraordinaryLine> find_extraordinary_lines(const ColoredConfig& config,
                                                        const Partition& part);

// For each extraordinary line with L associated points, the triple system
// over {1..L} is remapped onto the associated points; a triple with
// parameters (s1, s2, s3) contributes the row with entries
//   s2 - s3, s3 - s1, s1 - s2
// at the columns of the three points. Each row annihilates both the
// all-ones vector and the point matrix, so A * M = 0 identically.
struct Assembly {
    Partition part;
    std::vector<ExtraordinaryLine> lines;
    SparseMatrix points;          // M: one row per point, in global order
    SparseMatrix coefficients;    // A: one row per remapped triple
    // (line index, triple index) per coefficient row, in emission order.
    std::vector<std::pair<std::size_t, std::size_t>> row_origin;
    std::size_t split1 = 0;       // columns [0, split1) hold P1
    std::size_t split2 = 0;       // columns [split1, split2) hold P2
    SparseMatrix block_a1, block_a2, block_a3;
    SparseMatrix block_m1, block_m2, block_m3;
};

// Builds the assembly and checks its structural identities (A * M = 0,
// empty P3 block, three entries summing to zero in every row); a violation
// throws std::logic_error since it indicates a construction bug.
Assembly assemble(const ColoredConfig& config, const Partition& part);

// Hypotheses and design audit for a partitioned configuration:
//   (1)  |V_y| >= c1 * |P2|
//   (2)  (delta - c2) * |V_y| >= |P3|
// and, when both hold, the support statistics of the P2 coefficient block
// against the targets q <= 3, t <= 6, k >= 3 * c1 * c2 * |P2|.
struct ClaimReport {
    Rational c1, c2;
    Rational delta_used;
    Rational delta_star;           // lenient measured value
    Rational delta_star_strict;    // minimum over all points
    // True when delta_used exceeds the strict measurement, i.e. the
    // conclusions lean on the singleton convention.
    bool convention_risk = false;
    bool delta_valid = false;      // delta_used <= lenient delta_star
    std::size_t p1_size = 0, p2_size = 0, p3_size = 0;
    std::size_t vy_size = 0;
    bool size_ineq_ok = false;     // (1)
    bool tail_ineq_ok = false;     // (2)
    bool hypotheses_ok = false;
    std::string failure_reason;    // set when !hypotheses_ok

    // Populated only when hypotheses_ok.
    DesignParams a2_params;
    Rational k_threshold;          // 3 * c1 * c2 * |P2|
    bool q_ok = false, t_ok = false, k_ok = false;

    // Per-class view for the middle classes: each class should supply at
    // least c2 * |V_i| incident partners per point, with headroom
    // delta * |V_i| - |P3| measured exactly.
    struct ClassBound {
        std::size_t color = 0;     // 1-based class index
        std::size_t size = 0;
        Rational headroom;         // delta * |V_i| - |P3|
        Rational threshold;        // c2 * |V_i|
        bool ok = false;
    };
    std::vector<ClassBound> class_bounds;

    bool ok = false;               // hypotheses_ok && q_ok && t_ok && k_ok
};

ClaimReport audit_claim(const ColoredConfig& config, const Assembly& assembly,
                        const Rational& c1, const Rational& c2,
                        const std::optional<Rational>& delta_override = std::nullopt);

// Full dimension comparison across the partition:
//   rank(A2) >= |P2| - 12/(c1*c2)       (rank certificate on the P2 block)
//   rank(A2 M2) >= rank(M2) - (|P2| - rank(A2))
//   rank(A2 M2) == rank(A1 M1)          (from A1 M1 + A2 M2 = 0)
//   dim(P2) <= dim(P1) + 12/(c1*c2)
struct PartitionDimReport {
    ClaimReport claim;
    std::size_t dim_p1 = 0, dim_p2 = 0;
    Rational dim_bound;            // dim(P1) + 12/(c1*c2)
    std::size_t rank_a2 = 0, rank_m2 = 0, rank_a2m2 = 0, rank_a1m1 = 0;
    Rational rank_a2_floor;        // |P2| - 12/(c1*c2)
    bool rank_a2_ok = false;
    bool product_chain_ok = false;
    bool rank_equal_ok = false;
    bool dim_ok = false;
    bool ok = false;
};

PartitionDimReport verify_partition_dim(const ColoredConfig& config, const Assembly& assembly,
                                        const Rational& c1, const Rational& c2,
                                        const std::optional<Rational>& delta_override
                                        = std::nullopt);

}  // namespace mrlab

#endif
