#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "mrlab/assembly.hpp"
#include "mrlab/generators.hpp"
#include "mrlab/matrix_io.hpp"
#include "mrlab/rng.hpp"
#include "oracles.hpp"

using namespace mrlab;

namespace {

Point pt(long x, long y) { return {Scalar(x), Scalar(y)}; }

// ell collinear points in one class; with the full-range cut everything is
// in P2 and the single line is extraordinary.
ColoredConfig one_line(std::size_t ell) {
    std::vector<Point> a = {pt(0, 0)}, b;
    for (std::size_t i = 1; i < ell; ++i) {
        b.push_back(pt(static_cast<long>(i), 0));
    }
    return ColoredConfig::create(FieldTag::Rational, 2, {std::move(b), std::move(a)});
}

}  // namespace

TEST_CASE("a single extraordinary line of 3 points yields 6 rows") {
    const ColoredConfig config = one_line(3);
    const Partition part = restrict_partition(config, 0, 2);

    const auto lines = find_extraordinary_lines(config, part);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].associated.size() == 3);
    CHECK(lines[0].omitted.empty());

    const Assembly assembly = assemble(config, part);
    CHECK(assembly.coefficients.rows() == 6);
    CHECK(assembly.points.rows() == 3);

    // each row: three entries, summing to zero, annihilating the parameters
    std::map<std::size_t, std::vector<SparseMatrix::Entry>> rows;
    for (const auto& e : assembly.coefficients.entries()) {
        rows[e.row].push_back(e);
    }
    REQUIRE(rows.size() == 6);
    const std::vector<Point> points = config.all_points();
    for (const auto& [row, entries] : rows) {
        REQUIRE(entries.size() == 3);
        Scalar coeff_sum(0), weighted(0);
        for (const auto& e : entries) {
            CHECK_FALSE(e.value.is_zero());
            coeff_sum += e.value;
            weighted += e.value * points[e.col][0];  // the line is the x-axis
        }
        CHECK(coeff_sum == Scalar(0));
        CHECK(weighted == Scalar(0));
    }
}

TEST_CASE("extraordinary lines need a P2 point and 3 associated points") {
    // line with two P1 points and one P3 point, P2 elsewhere: not extraordinary
    const ColoredConfig config = ColoredConfig::create(
        FieldTag::Rational, 2, {{pt(0, 0), pt(1, 0)}, {pt(5, 5)}, {pt(2, 0)}});
    const Partition part = restrict_partition(config, 1, 2);
    CHECK(part_size(config, part, 1) == 2);
    CHECK(part_size(config, part, 2) == 1);
    CHECK(part_size(config, part, 3) == 1);
    CHECK(find_extraordinary_lines(config, part).empty());
    const Assembly assembly = assemble(config, part);
    CHECK(assembly.coefficients.rows() == 0);

    // P2 in general position, P1 empty: no line has three points
    const ColoredConfig sparse = ColoredConfig::create(
        FieldTag::Rational, 2, {{pt(0, 0), pt(1, 1), pt(2, 4)}, {pt(3, 9)}});
    CHECK(find_extraordinary_lines(sparse, restrict_partition(sparse, 0, 2)).empty());

    // a P3 member on the line never joins the associated set
    const ColoredConfig mixed = ColoredConfig::create(
        FieldTag::Rational, 2,
        {{pt(0, 0), pt(1, 0), pt(2, 0)}, {pt(3, 0)}, {pt(9, 0)}});
    const Partition cut = restrict_partition(mixed, 0, 2);
    const auto xlines = find_extraordinary_lines(mixed, cut);
    REQUIRE(xlines.size() == 1);
    CHECK(xlines[0].associated.size() == 4);
    REQUIRE(xlines[0].omitted.size() == 1);
    CHECK(xlines[0].omitted[0].color == 2);

    // associated points are listed in increasing parameter order
    const auto& params = xlines[0].parameters;
    for (std::size_t i = 1; i < params.size(); ++i) {
        CHECK(scalar_less(params[i - 1], params[i]));
    }
}

TEST_CASE("rank of the coefficient block of one ell-point line is ell - 2") {
    for (std::size_t ell = 3; ell <= 6; ++ell) {
        const ColoredConfig config = one_line(ell);
        const Assembly assembly = assemble(config, restrict_partition(config, 0, 2));
        CHECK(assembly.coefficients.rows() == ell * ell - ell);
        CHECK(exact_rank(assembly.block_a2) == ell - 2);

        // every column is hit by exactly 3(ell-1) rows
        std::map<std::size_t, std::size_t> support;
        for (const auto& e : assembly.coefficients.entries()) {
            ++support[e.col];
        }
        for (const auto& [col, count] : support) {
            CHECK(count == 3 * (ell - 1));
        }
    }
}

TEST_CASE("row origins follow (line, triple) emission order") {
    const ColoredConfig config = gen_grid(3, "rows");
    const Assembly assembly = assemble(config, restrict_partition(config, 0, 3));
    REQUIRE_FALSE(assembly.row_origin.empty());
    for (std::size_t i = 1; i < assembly.row_origin.size(); ++i) {
        const auto& prev = assembly.row_origin[i - 1];
        const auto& cur = assembly.row_origin[i];
        CHECK((cur.first > prev.first ||
               (cur.first == prev.first && cur.second == prev.second + 1)));
    }
    // per-line row counts are ell_i^2 - ell_i
    std::map<std::size_t, std::size_t> per_line;
    for (const auto& origin : assembly.row_origin) {
        ++per_line[origin.first];
    }
    for (const auto& [line, count] : per_line) {
        const std::size_t ell = assembly.lines[line].associated.size();
        CHECK(count == ell * ell - ell);
    }
}

TEST_CASE("assembly over the gaussian field") {
    const Scalar i1(Rational(0), Rational(1));
    const ColoredConfig config = ColoredConfig::create(
        FieldTag::Gaussian, 2,
        {{{Scalar(0), Scalar(0)}, {Scalar(1), i1}}, {{Scalar(2), i1 + i1}}});
    const Assembly assembly = assemble(config, restrict_partition(config, 0, 2));
    CHECK(assembly.coefficients.rows() == 6);  // one line, ell = 3
    CHECK(exact_rank(assembly.block_a2) == 1);
}

TEST_CASE("structural identities hold on random configurations and cuts") {
    SplitMix64 rng(515);
    for (int trial = 0; trial < 6; ++trial) {
        const ColoredConfig config = oracles::random_config(rng, 25);
        const std::size_t n = config.color_count();
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = x + 1; y <= n; ++y) {
                // assemble() itself asserts A*M = 0, zero P3 block, and
                // 3-entry zero-sum rows; a throw fails the test
                const Assembly assembly =
                    assemble(config, restrict_partition(config, x, y));

                if (assembly.coefficients.rows() > 0) {
                    const DesignParams params = audit_design(assembly.coefficients);
                    CHECK(params.q == 3);
                    CHECK(params.t <= 6);
                }
                const std::size_t left =
                    exact_rank(multiply(assembly.block_a2, assembly.block_m2));
                const std::size_t right =
                    exact_rank(multiply(assembly.block_a1, assembly.block_m1));
                CHECK(left == right);
            }
        }
    }
}

TEST_CASE("coefficient matrices survive the text round trip") {
    const ColoredConfig config = one_line(4);
    const Assembly assembly = assemble(config, restrict_partition(config, 0, 2));
    const std::string text = matrix_to_text(assembly.coefficients, config.field());
    const LoadedMatrix back = matrix_from_text(text);
    CHECK(back.matrix == assembly.coefficients);
}

TEST_CASE("claim audit on the collinear fixture") {
    const ColoredConfig config = gen_collinear({3, 3});
    const Assembly assembly = assemble(config, restrict_partition(config, 0, 2));

    // c1 = |V_y| / |P2|, c2 = delta*: the strongest valid pair
    const Rational c1(1, 2), c2(2, 3);
    const ClaimReport report = audit_claim(config, assembly, c1, c2);
    CHECK(report.delta_used == Rational(2, 3));
    CHECK(report.delta_star == Rational(2, 3));
    CHECK(report.delta_star_strict == Rational(2, 3));
    CHECK_FALSE(report.convention_risk);
    CHECK(report.hypotheses_ok);
    CHECK(report.size_ineq_ok);
    CHECK(report.tail_ineq_ok);
    CHECK(report.p2_size == 6);
    CHECK(report.vy_size == 3);
    // the single 6-point line gives 3(6-1) = 15 rows per column
    CHECK(report.a2_params.q == 3);
    CHECK(report.a2_params.k == 15);
    CHECK(report.a2_params.t == 6);
    CHECK(report.k_threshold == Rational(6));  // 3 * (1/2) * (2/3) * 6
    CHECK(report.q_ok);
    CHECK(report.t_ok);
    CHECK(report.k_ok);
    CHECK(report.ok);
    REQUIRE(report.class_bounds.size() == 2);
    for (const auto& cb : report.class_bounds) {
        CHECK(cb.size == 3);
        CHECK(cb.headroom == Rational(2));  // delta * |V_i| - |P3| = 2/3 * 3
        CHECK(cb.threshold == Rational(2));  // c2 * |V_i|
        CHECK(cb.ok);
    }

    // c2 >= delta makes inequality (2) unverifiable here only through
    // negative headroom; c2 above delta_used fails the per-class bound
    const ClaimReport bad = audit_claim(config, assembly, c1, Rational(3, 4));
    CHECK_FALSE(bad.ok);

    // an overlarge c1 breaks inequality (1)
    const ClaimReport bad1 = audit_claim(config, assembly, Rational(2, 3), c2);
    CHECK_FALSE(bad1.size_ineq_ok);
    CHECK_FALSE(bad1.hypotheses_ok);
    CHECK_FALSE(bad1.failure_reason.empty());

    CHECK_THROWS_AS(audit_claim(config, assembly, Rational(0), c2),
                    std::invalid_argument);
    CHECK_THROWS_AS(audit_claim(config, assembly, c1, Rational(-1, 2)),
                    std::invalid_argument);
}

TEST_CASE("claim audit defaults to the strict delta") {
    // sizes (2,1): lenient delta* = 1/2 but the singleton pins strict to 0
    const ColoredConfig config = ColoredConfig::create(
        FieldTag::Rational, 2,
        {{pt(0, 0), pt(2, 0)}, {pt(1, 0)}});
    const Assembly assembly = assemble(config, restrict_partition(config, 0, 2));

    const ClaimReport strict = audit_claim(config, assembly, Rational(1, 3),
                                           Rational(1, 4));
    CHECK(strict.delta_used == Rational(0));
    CHECK_FALSE(strict.convention_risk);
    CHECK_FALSE(strict.hypotheses_ok);  // (0 - 1/4)|V_y| < 0 = |P3| fails...

    // overriding with the lenient value is possible but flagged
    const ClaimReport lenient = audit_claim(config, assembly, Rational(1, 3),
                                            Rational(1, 4), Rational(1, 2));
    CHECK(lenient.delta_used == Rational(1, 2));
    CHECK(lenient.convention_risk);
    CHECK(lenient.delta_valid);
    CHECK(lenient.hypotheses_ok);
    CHECK(lenient.ok);

    // an override above the lenient measurement is rejected as invalid
    const ClaimReport over = audit_claim(config, assembly, Rational(1, 3),
                                         Rational(1, 4), Rational(3, 4));
    CHECK_FALSE(over.delta_valid);
    CHECK_FALSE(over.hypotheses_ok);
}

TEST_CASE("partition dimension report on the collinear fixture") {
    const ColoredConfig config = gen_collinear({3, 3});
    const Assembly assembly = assemble(config, restrict_partition(config, 0, 2));
    const PartitionDimReport report =
        verify_partition_dim(config, assembly, Rational(1, 2), Rational(2, 3));

    CHECK(report.claim.ok);
    CHECK(report.dim_p1 == 0);
    CHECK(report.dim_p2 == 1);
    CHECK(report.dim_bound == Rational(36));  // 0 + 12/(c1*c2)
    CHECK(report.rank_a2 == 4);               // one 6-point line: ell - 2
    CHECK(report.rank_m2 == 1);
    CHECK(report.rank_a2m2 == 0);
    CHECK(report.rank_a1m1 == 0);
    CHECK(report.rank_a2_floor == Rational(-30));
    CHECK(report.rank_a2_ok);
    CHECK(report.product_chain_ok);
    CHECK(report.rank_equal_ok);
    CHECK(report.dim_ok);
    CHECK(report.ok);
}

TEST_CASE("partition dimension chain on random configurations") {
    // generous constants keep the hypotheses satisfiable only sometimes (the
    // strict delta must clear c2); collinear fixtures guarantee a few
    // qualifying cuts, random configurations exercise the unconditional part
    SplitMix64 rng(929);
    std::vector<ColoredConfig> corpus = {gen_collinear({3, 3}),
                                         gen_collinear({4, 2, 2}),
                                         gen_collinear({2, 2, 2, 2})};
    for (int trial = 0; trial < 10; ++trial) {
        corpus.push_back(oracles::random_config(rng, 20));
    }
    std::size_t verified = 0;
    for (const ColoredConfig& config : corpus) {
        const std::size_t n = config.color_count();
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = x + 1; y <= n; ++y) {
                const Partition part = restrict_partition(config, x, y);
                const Assembly assembly = assemble(config, part);
                const PartitionDimReport report = verify_partition_dim(
                    config, assembly, Rational(1, 100), Rational(1, 100));
                // the rank identities hold unconditionally
                CHECK(report.rank_a2m2 == report.rank_a1m1);
                CHECK(report.product_chain_ok);
                if (report.claim.hypotheses_ok) {
                    CHECK(report.rank_a2_ok);
                    CHECK(report.dim_ok);
                    ++verified;
                }
            }
        }
    }
    CHECK(verified > 0);
}
