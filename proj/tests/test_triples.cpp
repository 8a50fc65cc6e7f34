#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <vector>

#include "mrlab/matrix.hpp"
#include "mrlab/report_json.hpp"
#include "mrlab/rng.hpp"
#include "mrlab/triples.hpp"
#include "oracles.hpp"

using namespace mrlab;

namespace {

// Independent reimplementation of the four triple-system properties, used
// both as a counting cross-check and as the reference decision procedure.
bool reference_check(const TripleSystem& system) {
    const std::size_t r = system.ground;
    if (r < 3) return false;
    if (system.triples.size() != r * r - r) return false;
    std::set<std::array<std::size_t, 3>> distinct;
    std::map<std::size_t, std::size_t> element_count;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_count;
    for (const auto& t : system.triples) {
        for (std::size_t e : t) {
            if (e < 1 || e > r) return false;
        }
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) return false;
        if (!distinct.insert(t).second) return false;
        for (std::size_t i = 0; i < 3; ++i) {
            ++element_count[t[i]];
            for (std::size_t j = i + 1; j < 3; ++j) {
                ++pair_count[{std::min(t[i], t[j]), std::max(t[i], t[j])}];
            }
        }
    }
    for (std::size_t e = 1; e <= r; ++e) {
        if (element_count[e] != 3 * (r - 1)) return false;
    }
    for (const auto& [pair, count] : pair_count) {
        if (count > 6) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("r=3 gives exactly the six permutations of (1,2,3)") {
    const TripleSystem system = build_triples(3);
    REQUIRE(system.triples.size() == 6);
    std::set<std::array<std::size_t, 3>> got(system.triples.begin(),
                                             system.triples.end());
    const std::set<std::array<std::size_t, 3>> want = {
        {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    CHECK(got == want);
}

TEST_CASE("build_triples satisfies the exact counts for every r in 3..25") {
    for (std::size_t r = 3; r <= 25; ++r) {
        const TripleSystem system = build_triples(r);
        CHECK(system.ground == r);
        CHECK(system.triples.size() == r * r - r);
        CHECK(verify_triples(system).ok);
        CHECK(reference_check(system));

        // independent counting pass: occurrences are exactly 3(r-1)
        std::vector<std::size_t> occurrences(r + 1, 0);
        for (const auto& t : system.triples) {
            for (std::size_t e : t) {
                ++occurrences.at(e);
            }
        }
        for (std::size_t e = 1; e <= r; ++e) {
            CHECK(occurrences[e] == 3 * (r - 1));
        }
    }
    CHECK_THROWS_AS(build_triples(2), std::invalid_argument);

    // repeated calls return the same (cached) system
    CHECK(build_triples(9).triples == build_triples(9).triples);
}

TEST_CASE("verify_triples reports the first violation") {
    TripleSystem missing = build_triples(3);
    missing.triples.pop_back();
    const TripleCheck short_check = verify_triples(missing);
    CHECK_FALSE(short_check.ok);
    CHECK(short_check.violation.find("expected 6 triples, found 5") !=
          std::string::npos);

    TripleSystem repeat = build_triples(3);
    repeat.triples[0] = {1, 1, 2};
    const TripleCheck repeat_check = verify_triples(repeat);
    CHECK_FALSE(repeat_check.ok);
    CHECK(repeat_check.violation.find("repeats an element") != std::string::npos);

    TripleSystem range = build_triples(3);
    range.triples[0] = {1, 2, 4};
    CHECK(verify_triples(range).violation.find("outside 1..3") != std::string::npos);

    TripleSystem dup = build_triples(3);
    dup.triples[1] = dup.triples[0];
    CHECK(verify_triples(dup).violation.find("occurs twice") != std::string::npos);
}

TEST_CASE("a swap that only breaks the pair bound is caught as a pair violation") {
    // swap one element between two triples of the r=4 system; element counts
    // are preserved, so when the result is a valid-looking family the first
    // violated property is the pair bound (some pair moves from 6 to 7)
    std::size_t pair_violations = 0;
    std::size_t disagreements = 0;
    for (std::size_t r = 4; r <= 6; ++r) {
    const TripleSystem base = build_triples(r);
    for (std::size_t i = 0; i < base.triples.size(); ++i) {
        for (std::size_t j = 0; j < base.triples.size(); ++j) {
            if (i == j) continue;
            for (std::size_t pi = 0; pi < 3; ++pi) {
                for (std::size_t pj = 0; pj < 3; ++pj) {
                    if (base.triples[i][pi] == base.triples[j][pj]) continue;
                    TripleSystem tampered = base;
                    std::swap(tampered.triples[i][pi], tampered.triples[j][pj]);
                    const auto& a = tampered.triples[i];
                    const auto& b = tampered.triples[j];
                    if (a[0] == a[1] || a[0] == a[2] || a[1] == a[2]) continue;
                    if (b[0] == b[1] || b[0] == b[2] || b[1] == b[2]) continue;
                    std::set<std::array<std::size_t, 3>> all(
                        tampered.triples.begin(), tampered.triples.end());
                    if (all.size() != tampered.triples.size()) continue;
                    // the swap preserves element counts, so the only property
                    // that can break is the pair bound (when the triples
                    // overlap, pair counts may survive too)
                    const TripleCheck check = verify_triples(tampered);
                    if (check.ok != reference_check(tampered)) {
                        ++disagreements;
                    }
                    if (!check.ok) {
                        CHECK(check.violation.find("pair") != std::string::npos);
                        ++pair_violations;
                    }
                }
            }
        }
    }
    }
    CHECK(disagreements == 0);
    CHECK(pair_violations > 0);
}

TEST_CASE("verify_triples is a decision procedure on small families over [3]") {
    // enumerate every subset of at most 8 of the 27 ordered triples over [3]
    // and compare the verdict with the reference checker bit for bit
    std::vector<std::array<std::size_t, 3>> universe;
    for (std::size_t a = 1; a <= 3; ++a) {
        for (std::size_t b = 1; b <= 3; ++b) {
            for (std::size_t c = 1; c <= 3; ++c) {
                universe.push_back({a, b, c});
            }
        }
    }
    REQUIRE(universe.size() == 27);

    std::size_t agreements = 0;
    std::size_t accepted = 0;
    std::size_t mismatches = 0;
    TripleSystem system;
    system.ground = 3;
    const auto run = [&](const auto& self, std::size_t next) -> void {
        const bool fast = verify_triples(system).ok;
        if (fast != reference_check(system)) {
            ++mismatches;
        }
        if (fast) {
            ++accepted;
        }
        ++agreements;
        if (system.triples.size() == 8) return;
        for (std::size_t idx = next; idx < universe.size(); ++idx) {
            system.triples.push_back(universe[idx]);
            self(self, idx + 1);
            system.triples.pop_back();
        }
    };
    run(run, 0);
    // sum of C(27, s) for s = 0..8
    CHECK(agreements == 3505699);
    CHECK(mismatches == 0);
    // exactly one family over [3] qualifies: all six distinct-element triples
    CHECK(accepted == 1);
}

TEST_CASE("triple systems round trip through JSON") {
    const TripleSystem system = build_triples(5);
    const TripleSystem back = triples_from_json(to_json(system));
    CHECK(back.ground == system.ground);
    CHECK(back.triples == system.triples);
    CHECK_THROWS_AS(triples_from_json(nlohmann::json::parse("{\"r\":3}")),
                    ParseError);
}

TEST_CASE("audit_design on pinned matrices") {
    SparseMatrix identity(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        identity.set(i, i, Scalar(1));
    }
    const DesignParams id_params = audit_design(identity);
    CHECK(id_params.q == 1);
    CHECK(id_params.k == 1);
    CHECK(id_params.t == 0);

    SparseMatrix ones(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            ones.set(i, j, Scalar(1));
        }
    }
    const DesignParams ones_params = audit_design(ones);
    CHECK(ones_params.q == 2);
    CHECK(ones_params.k == 4);
    CHECK(ones_params.t == 4);

    // an all-zero column drives k to 0
    SparseMatrix gap(2, 2);
    gap.set(0, 0, Scalar(1));
    gap.set(1, 0, Scalar(1));
    CHECK(audit_design(gap).k == 0);
}

TEST_CASE("design_rank_bound formula") {
    CHECK(design_rank_bound(100, DesignParams{3, 50, 6}) == Rational(28));
    CHECK(design_rank_bound(7, DesignParams{1, 2, 5}) == Rational(7));
    CHECK(design_rank_bound(10, DesignParams{3, 3, 6}) == Rational(-110));
    CHECK_THROWS_AS(design_rank_bound(5, DesignParams{2, 0, 1}),
                    std::invalid_argument);
}

TEST_CASE("rank certificate holds on matrices assembled from triple systems") {
    SplitMix64 rng(616);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t r = 3 + rng.below(10);
        const TripleSystem system = build_triples(r);
        SparseMatrix mat(system.triples.size(), r);
        for (std::size_t row = 0; row < system.triples.size(); ++row) {
            for (std::size_t e : system.triples[row]) {
                const Rational value = make_rational(
                    BigInt(static_cast<long>(rng.below(19)) - 9),
                    BigInt(static_cast<long>(1 + rng.below(4))));
                mat.set(row, e - 1,
                        Scalar(value == 0 ? Rational(1) : value));
            }
        }
        const DesignParams params = audit_design(mat);
        CHECK(params.q == 3);
        const Rational floor = design_rank_bound(r, params);
        CHECK(Rational(static_cast<long>(exact_rank(mat))) >= floor);
    }
}
