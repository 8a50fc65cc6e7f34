#include "mrlab/assembly.hpp"

#include <algorithm>
#include <stdexcept>

namespace mrlab {

namespace {

SparseMatrix rows_block(const std::vector<Point>& points, std::size_t dim) {
    SparseMatrix block(points.size(), dim);
    for (std::size_t r = 0; r < points.size(); ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            block.set(r, c, points[r][c]);
        }
    }
    return block;
}

}  // namespace

std::vector<ExtraordinaryLine> find_extraordinary_lines(const ColoredConfig& config,
                                                        const Partition& part) {
    std::vector<ExtraordinaryLine> result;
    for (const LineRecord& line : enumerate_lines(config)) {
        ExtraordinaryLine ex;
        bool touches_p2 = false;
        for (const PointRef& ref : line.members) {
            if (part.in_p3(ref.color)) {
                ex.omitted.push_back(ref);
            } else {
                ex.associated.push_back(ref);
                touches_p2 = touches_p2 || part.in_p2(ref.color);
            }
        }
        if (!touches_p2 || ex.associated.size() < 3) {
            continue;
        }
        std::vector<std::pair<Scalar, PointRef>> order;
        order.reserve(ex.associated.size());
        for (const PointRef& ref : ex.associated) {
            order.emplace_back(line_parameter(line, config.point(ref)), ref);
        }
        // Parameters of distinct points on one line are distinct, so this
        // order is total and independent of the input arrangement.
        std::sort(order.begin(), order.end(),
                  [](const auto& a, const auto& b) { return scalar_less(a.first, b.first); });
        ex.associated.clear();
        ex.parameters.reserve(order.size());
        for (auto& [param, ref] : order) {
            ex.parameters.push_back(param);
            ex.associated.push_back(ref);
        }
        ex.line = line;
        result.push_back(std::move(ex));
    }
    return result;
}

Assembly assemble(const ColoredConfig& config, const Partition& part) {
    Assembly assembly;
    assembly.part = part;
    assembly.lines = find_extraordinary_lines(config, part);

    const std::size_t m = config.point_count();
    assembly.points = rows_block(config.all_points(), config.dim());

    std::size_t row_count = 0;
    for (const ExtraordinaryLine& ex : assembly.lines) {
        const std::size_t len = ex.associated.size();
        row_count += len * len - len;
    }

    SparseMatrix a(row_count, m);
    std::size_t row = 0;
    for (std::size_t li = 0; li < assembly.lines.size(); ++li) {
        const ExtraordinaryLine& ex = assembly.lines[li];
        const TripleSystem system = build_triples(ex.associated.size());
        for (std::size_t ti = 0; ti < system.triples.size(); ++ti) {
            const auto& triple = system.triples[ti];
            const Scalar& s1 = ex.parameters[triple[0] - 1];
            const Scalar& s2 = ex.parameters[triple[1] - 1];
            const Scalar& s3 = ex.parameters[triple[2] - 1];
            a.set(row, config.global_index(ex.associated[triple[0] - 1]), s2 - s3);
            a.set(row, config.global_index(ex.associated[triple[1] - 1]), s3 - s1);
            a.set(row, config.global_index(ex.associated[triple[2] - 1]), s1 - s2);
            assembly.row_origin.emplace_back(li, ti);
            ++row;
        }
    }
    assembly.coefficients = std::move(a);

    const std::vector<std::size_t> sizes = config.class_sizes();
    assembly.split1 = 0;
    for (std::size_t c = 0; c < part.x; ++c) {
        assembly.split1 += sizes[c];
    }
    assembly.split2 = assembly.split1;
    for (std::size_t c = part.x; c < part.y; ++c) {
        assembly.split2 += sizes[c];
    }

    std::vector<std::size_t> cols1, cols2, cols3;
    for (std::size_t c = 0; c < assembly.split1; ++c) cols1.push_back(c);
    for (std::size_t c = assembly.split1; c < assembly.split2; ++c) cols2.push_back(c);
    for (std::size_t c = assembly.split2; c < m; ++c) cols3.push_back(c);
    assembly.block_a1 = assembly.coefficients.select_columns(cols1);
    assembly.block_a2 = assembly.coefficients.select_columns(cols2);
    assembly.block_a3 = assembly.coefficients.select_columns(cols3);
    assembly.block_m1 = rows_block(part_points(config, part, 1), config.dim());
    assembly.block_m2 = rows_block(part_points(config, part, 2), config.dim());
    assembly.block_m3 = rows_block(part_points(config, part, 3), config.dim());

    // Structural identities. A failure here is a bug in the assembly, not a
    // property of the input, hence logic_error.
    if (!assembly.block_a3.entries().empty()) {
        throw std::logic_error("assemble: coefficients leaked into the P3 block");
    }
    std::vector<std::size_t> support(row_count, 0);
    std::vector<Scalar> row_sum(row_count);
    for (const auto& entry : assembly.coefficients.entries()) {
        ++support[entry.row];
        row_sum[entry.row] += entry.value;
    }
    for (std::size_t r = 0; r < row_count; ++r) {
        if (support[r] != 3) {
            throw std::logic_error("assemble: row " + std::to_string(r) + " has " +
                                   std::to_string(support[r]) + " entries instead of 3");
        }
        if (!row_sum[r].is_zero()) {
            throw std::logic_error("assemble: row " + std::to_string(r) +
                                   " does not annihilate the all-ones vector");
        }
    }
    if (!multiply(assembly.coefficients, assembly.points).entries().empty()) {
        throw std::logic_error("assemble: A * M != 0");
    }
    return assembly;
}

ClaimReport audit_claim(const ColoredConfig& config, const Assembly& assembly,
                        const Rational& c1, const Rational& c2,
                        const std::optional<Rational>& delta_override) {
    if (c1 <= 0 || c2 <= 0) {
        throw std::invalid_argument("audit_claim: c1 and c2 must be positive");
    }

    ClaimReport report;
    report.c1 = c1;
    report.c2 = c2;

    const DeltaProfile profile = compute_delta(config);
    report.delta_star = profile.delta_star;
    report.delta_star_strict = profile.delta_star_strict;
    // Default to the strict measurement: it is the largest delta for which
    // the per-point property holds with no singleton caveat.
    report.delta_used = delta_override.value_or(profile.delta_star_strict);
    report.delta_valid = report.delta_used <= profile.delta_star;
    report.convention_risk = report.delta_used > profile.delta_star_strict;

    const Partition& part = assembly.part;
    report.p1_size = part_size(config, part, 1);
    report.p2_size = part_size(config, part, 2);
    report.p3_size = part_size(config, part, 3);
    report.vy_size = config.color_class(part.y - 1).size();

    if (!report.delta_valid) {
        report.failure_reason = "asserted delta " + rational_str(report.delta_used) +
                                " exceeds measured delta* " + rational_str(report.delta_star);
        return report;
    }

    report.size_ineq_ok = Rational(report.vy_size) >= c1 * Rational(report.p2_size);
    report.tail_ineq_ok =
        (report.delta_used - c2) * Rational(report.vy_size) >= Rational(report.p3_size);
    report.hypotheses_ok = report.size_ineq_ok && report.tail_ineq_ok;
    if (!report.hypotheses_ok) {
        report.failure_reason = !report.size_ineq_ok
            ? "|V_y| = " + std::to_string(report.vy_size) + " is below c1 * |P2|"
            : "(delta - c2) * |V_y| does not cover |P3| = " + std::to_string(report.p3_size);
        return report;
    }

    report.a2_params = audit_design(assembly.block_a2);
    report.k_threshold = Rational(3) * c1 * c2 * Rational(report.p2_size);
    report.q_ok = report.a2_params.q <= 3;
    report.t_ok = report.a2_params.t <= 6;
    report.k_ok = Rational(report.a2_params.k) >= report.k_threshold;

    for (std::size_t c = part.x; c < part.y; ++c) {
        ClaimReport::ClassBound bound;
        bound.color = c + 1;
        bound.size = config.color_class(c).size();
        bound.headroom = report.delta_used * Rational(bound.size) - Rational(report.p3_size);
        bound.threshold = c2 * Rational(bound.size);
        bound.ok = bound.headroom >= bound.threshold;
        report.class_bounds.push_back(std::move(bound));
    }

    report.ok = report.hypotheses_ok && report.q_ok && report.t_ok && report.k_ok;
    return report;
}

PartitionDimReport verify_partition_dim(const ColoredConfig& config, const Assembly& assembly,
                                        const Rational& c1, const Rational& c2,
                                        const std::optional<Rational>& delta_override) {
    PartitionDimReport report;
    report.claim = audit_claim(config, assembly, c1, c2, delta_override);

    const Rational slack = Rational(12) / (c1 * c2);
    report.dim_p1 = linear_dim(part_points(config, assembly.part, 1));
    report.dim_p2 = linear_dim(part_points(config, assembly.part, 2));
    report.dim_bound = Rational(report.dim_p1) + slack;
    report.dim_ok = Rational(report.dim_p2) <= report.dim_bound;

    report.rank_a2 = exact_rank(assembly.block_a2);
    report.rank_m2 = exact_rank(assembly.block_m2);
    report.rank_a2m2 = exact_rank(multiply(assembly.block_a2, assembly.block_m2));
    report.rank_a1m1 = exact_rank(multiply(assembly.block_a1, assembly.block_m1));

    report.rank_a2_floor = Rational(report.claim.p2_size) - slack;
    report.rank_a2_ok = Rational(report.rank_a2) >= report.rank_a2_floor;
    report.product_chain_ok =
        Rational(report.rank_a2m2) >=
        Rational(report.rank_m2) - (Rational(report.claim.p2_size) - Rational(report.rank_a2));
    report.rank_equal_ok = report.rank_a2m2 == report.rank_a1m1;

    report.ok = report.claim.ok && report.rank_a2_ok && report.product_chain_ok &&
                report.rank_equal_ok && report.dim_ok;
    return report;
}

}  // namespace mrlab
