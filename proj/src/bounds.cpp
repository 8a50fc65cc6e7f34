#include "mrlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mrlab/delta.hpp"
#include "mrlab/matrix.hpp"

namespace mrlab {

Rational rational_pow(const Rational& base, std::size_t exponent) {
    Rational result(1);
    Rational factor = base;
    for (std::size_t e = exponent; e != 0; e >>= 1) {
        if (e & 1) {
            result *= factor;
        }
        if (e > 1) {
            factor *= factor;
        }
    }
    return result;
}

EpsilonDecomposition classify_indices(const std::vector<std::size_t>& sizes,
                                      const Rational& delta, const Rational& eps) {
    if (sizes.empty()) {
        throw std::invalid_argument("classify_indices: no classes");
    }
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (sizes[j] == 0) {
            throw std::invalid_argument("classify_indices: class " + std::to_string(j + 1) +
                                        " is empty");
        }
        if (j > 0 && sizes[j] > sizes[j - 1]) {
            throw std::invalid_argument("classify_indices: sizes must be nonincreasing");
        }
    }
    if (!(eps > 0) || !(eps < delta) || !(delta <= 1)) {
        throw std::invalid_argument("classify_indices: need 0 < eps < delta <= 1, got eps = " +
                                    rational_str(eps) + ", delta = " + rational_str(delta));
    }

    EpsilonDecomposition decomposition;
    decomposition.delta = delta;
    decomposition.eps = eps;
    decomposition.c_eps = Rational(1) / (delta - eps);

    const std::size_t n = sizes.size();
    decomposition.is_large.assign(n, false);
    BigInt tail = 0;
    for (std::size_t j = n; j >= 1; --j) {
        // Tail is empty for j = n, so the last index is always large.
        decomposition.is_large[j - 1] =
            Rational(BigInt(sizes[j - 1])) >= decomposition.c_eps * Rational(tail);
        tail += static_cast<unsigned long>(sizes[j - 1]);
    }
    std::size_t lo = 1;
    for (std::size_t j = 1; j <= n; ++j) {
        if (decomposition.is_large[j - 1]) {
            decomposition.large_indices.push_back(j);
            decomposition.blocks.push_back({lo, j});
            lo = j + 1;
        }
    }
    return decomposition;
}

TailReport verify_tail_bound(const EpsilonDecomposition& decomposition,
                             const std::vector<std::size_t>& sizes) {
    TailReport report;
    report.ok = true;
    const std::size_t n = sizes.size();
    if (decomposition.is_large.size() != n) {
        throw std::invalid_argument("verify_tail_bound: decomposition is for " +
                                    std::to_string(decomposition.is_large.size()) +
                                    " classes, sizes has " + std::to_string(n));
    }

    std::vector<BigInt> suffix(n + 2, 0);    // suffix[j] = |V_j| + ... + |V_n|
    for (std::size_t j = n; j >= 1; --j) {
        suffix[j] = suffix[j + 1] + BigInt(static_cast<unsigned long>(sizes[j - 1]));
    }

    const Rational growth = Rational(1) + decomposition.c_eps;
    for (std::size_t b = 0; b < decomposition.blocks.size(); ++b) {
        const auto& block = decomposition.blocks[b];
        const std::size_t y = block.hi;
        const Rational vy(BigInt(static_cast<unsigned long>(sizes[y - 1])));
        for (std::size_t offset = 0; offset + block.lo < y + 1; ++offset) {
            TailReport::Item item;
            item.block = b + 1;
            item.offset = offset;
            item.tail_sum = suffix[y - offset];
            item.allowance = Rational(2) * rational_pow(growth, offset) * vy;
            item.ok = Rational(item.tail_sum) <= item.allowance;
            report.ok = report.ok && item.ok;
            report.items.push_back(std::move(item));
        }
        TailReport::BlockFloor floor;
        floor.block = b + 1;
        floor.vy = sizes[y - 1];
        const BigInt block_sum = suffix[block.lo] - suffix[y + 1];
        floor.floor = Rational(block_sum) /
                      (Rational(2) * rational_pow(growth, y - block.lo));
        floor.ok = vy >= floor.floor;
        report.ok = report.ok && floor.ok;
        report.floors.push_back(std::move(floor));
    }
    return report;
}

BoundValues bound_from_sizes(const std::vector<std::size_t>& sizes,
                             const Rational& delta, const Rational& eps) {
    BoundValues values;
    values.decomposition = classify_indices(sizes, delta, eps);

    const Rational growth = Rational(1) + values.decomposition.c_eps;
    const Rational lead = Rational(24) / eps;
    Rational m(0);
    std::size_t prev = 0;
    for (const auto& block : values.decomposition.blocks) {
        const std::size_t gap = block.hi - prev - 1;
        const Rational term = lead * rational_pow(growth, gap);
        m = Rational(2) * m + term;
        values.per_block.push_back(term);
        values.recursion.push_back(m);
        prev = block.hi;
    }
    values.b_rec = m;

    const std::size_t k = values.decomposition.blocks.size();
    Rational sum(0);
    prev = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t gap = values.decomposition.blocks[i].hi - prev - 1;
        sum += rational_pow(Rational(2), k - 1 - i) * rational_pow(growth, gap);
        prev = values.decomposition.blocks[i].hi;
    }
    values.b_sum = lead * sum;

    values.b_coarse = Rational(24) * Rational(BigInt(static_cast<unsigned long>(k))) / eps *
                      rational_pow(Rational(2) / (Rational(2) + eps), k) *
                      rational_pow(growth, sizes.size());
    return values;
}

BoundReport theorem_bound(const ColoredConfig& config, const Rational& delta,
                          const Rational& eps) {
    const DeltaProfile profile = compute_delta(config);
    if (profile.delta_star == 0) {
        throw HypothesisError("hypothesis empty: measured delta* is 0, no positive delta applies");
    }
    if (delta > profile.delta_star) {
        throw HypothesisError("hypothesis empty: requested delta " + rational_str(delta) +
                              " exceeds measured delta* " + rational_str(profile.delta_star));
    }

    BoundReport report;
    report.delta_star = profile.delta_star;
    const std::vector<std::size_t> sizes = config.class_sizes();
    report.values = bound_from_sizes(sizes, delta, eps);
    report.half_eps = bound_from_sizes(sizes, delta, delta / 2);

    std::vector<Point> prefix;
    std::size_t covered = 0;
    for (const auto& block : report.values.decomposition.blocks) {
        std::vector<Point> alone;
        for (std::size_t c = covered; c < block.hi; ++c) {
            for (const Point& p : config.color_class(c)) {
                prefix.push_back(p);
                alone.push_back(p);
            }
        }
        covered = block.hi;
        report.measured.push_back(linear_dim(prefix));
        report.block_dim.push_back(linear_dim(alone));
    }
    report.dim_v = report.measured.back();
    report.adim_v = affine_dim(config.all_points());

    report.step_chain_ok = true;
    for (std::size_t i = 0; i < report.measured.size(); ++i) {
        const std::size_t before = i == 0 ? 0 : report.measured[i - 1];
        if (report.measured[i] > before + report.block_dim[i]) {
            report.step_chain_ok = false;
        }
    }
    report.adim_le_dim = report.adim_v <= static_cast<long>(report.dim_v);
    report.dim_le_rec = Rational(BigInt(static_cast<unsigned long>(report.dim_v))) <=
                        report.values.b_rec;
    report.rec_eq_sum = report.values.b_rec == report.values.b_sum;
    report.sum_le_coarse = report.values.b_sum <= report.values.b_coarse;
    report.ok = report.step_chain_ok && report.adim_le_dim && report.dim_le_rec &&
                report.rec_eq_sum && report.sum_le_coarse;
    return report;
}

std::pair<Rational, BoundReport> optimize_epsilon(const ColoredConfig& config,
                                                  const Rational& delta, std::size_t grid) {
    if (grid == 0) {
        throw std::invalid_argument("optimize_epsilon: grid must be positive");
    }
    const std::vector<std::size_t> sizes = config.class_sizes();
    std::vector<Rational> candidates;
    for (std::size_t g = 1; g <= grid; ++g) {
        candidates.push_back(delta * Rational(BigInt(static_cast<unsigned long>(g))) /
                             Rational(BigInt(static_cast<unsigned long>(grid + 1))));
    }
    candidates.push_back(delta / 2);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // Validate delta and delta* once; per-candidate work is size-only.
    const DeltaProfile profile = compute_delta(config);
    if (profile.delta_star == 0) {
        throw HypothesisError("hypothesis empty: measured delta* is 0, no positive delta applies");
    }
    if (delta > profile.delta_star) {
        throw HypothesisError("hypothesis empty: requested delta " + rational_str(delta) +
                              " exceeds measured delta* " + rational_str(profile.delta_star));
    }

    bool found = false;
    Rational best_eps;
    Rational best_value;
    for (const Rational& eps : candidates) {
        const Rational value = bound_from_sizes(sizes, delta, eps).b_rec;
        // Candidates ascend, so a strict improvement keeps the smallest
        // optimal eps.
        if (!found || value < best_value) {
            found = true;
            best_eps = eps;
            best_value = value;
        }
    }
    return {best_eps, theorem_bound(config, delta, best_eps)};
}

CoarseReport coarse_constants(const Rational& eps, const std::optional<Rational>& delta) {
    if (!(eps > 0) || !(eps < 1)) {
        throw std::invalid_argument("coarse_constants: need 0 < eps < 1, got " +
                                    rational_str(eps));
    }
    CoarseReport report;
    report.eps = eps;

    const Rational ratio = Rational(2) / (Rational(2) + eps);
    report.k_star = -1.0 / std::log(mpq_class(ratio).get_d());
    const double floor = std::floor(report.k_star);
    report.k_lo = floor < 1.0 ? 1 : static_cast<std::size_t>(floor);
    report.k_hi = report.k_lo + 1;

    // Explicit return type: letting auto deduce the GMP expression template
    // here would return references to dead temporaries.
    const auto f = [&](std::size_t k) -> Rational {
        return Rational(24) * Rational(BigInt(static_cast<unsigned long>(k))) / eps *
               rational_pow(ratio, k);
    };
    report.f_lo = f(report.k_lo);
    report.f_hi = f(report.k_hi);
    report.f_max = report.f_lo >= report.f_hi ? report.f_lo : report.f_hi;

    if (delta) {
        if (!(eps < *delta) || !(*delta <= 1)) {
            throw std::invalid_argument("coarse_constants: need eps < delta <= 1 for the chain");
        }
        report.has_chain = true;
        report.c_eps = Rational(1) / (*delta - eps);
        // 2/(1+c) < 2/(2+eps) iff c > 1 + eps; holds since delta <= 1 gives
        // c >= 1/(1-eps) > 1+eps. Checked exactly anyway.
        report.chain_ok = Rational(2) / (Rational(1) + report.c_eps) < ratio &&
                          report.c_eps > Rational(1) + eps;
    }
    return report;
}

}  // namespace mrlab
