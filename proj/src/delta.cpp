#include "mrlab/delta.hpp"

#include <map>
#include <stdexcept>

namespace mrlab {

DeltaProfile compute_delta(const ColoredConfig& config) {
    return compute_delta(config, enumerate_lines(config));
}

DeltaProfile compute_delta(const ColoredConfig& config,
                           const std::vector<LineRecord>& lines) {
    const std::size_t n = config.color_count();
    DeltaProfile profile;
    profile.counts.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
        profile.counts[c].assign(config.color_class(c).size(), 0);
    }

    // Each unordered same-color pair {v, u} lies on exactly one maximal
    // line, so summing (|L cap V_i| - 1) over the multi-color lines through
    // v yields count(v) without double counting.
    std::vector<std::size_t> per_color(n);
    for (const LineRecord& line : lines) {
        per_color.assign(n, 0);
        for (const PointRef& ref : line.members) {
            ++per_color[ref.color];
        }
        for (const PointRef& ref : line.members) {
            const std::size_t same = per_color[ref.color];
            if (same >= 2 && line.members.size() > same) {
                profile.counts[ref.color][ref.index] += same - 1;
            }
        }
    }

    profile.fractions.resize(n);
    profile.color_min.resize(n);
    bool any_multi = false;
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t size = config.color_class(c).size();
        profile.fractions[c].reserve(size);
        Rational least;
        for (std::size_t k = 0; k < size; ++k) {
            Rational frac = make_rational(BigInt(profile.counts[c][k]), BigInt(size));
            if (k == 0 || frac < least) {
                least = frac;
            }
            profile.fractions[c].push_back(frac);
        }
        profile.color_min[c] = least;
        if (size >= 2) {
            if (!any_multi || least < profile.delta_star) {
                profile.delta_star = least;
            }
            any_multi = true;
        } else {
            profile.singleton_convention_applied = true;
        }
        if (c == 0 || least < profile.delta_star_strict) {
            profile.delta_star_strict = least;
        }
    }
    if (!any_multi) {
        profile.delta_star = Rational(1);
        profile.all_singletons = true;
    }
    return profile;
}

MrCheck is_mr_configuration(const ColoredConfig& config) {
    if (config.color_count() != 2) {
        throw std::invalid_argument("is_mr_configuration: expected exactly 2 colors, got " +
                                    std::to_string(config.color_count()));
    }
    MrCheck check;
    for (const LineRecord& line : enumerate_lines(config)) {
        bool seen[2] = {false, false};
        for (const PointRef& ref : line.members) {
            seen[ref.color] = true;
        }
        if (!seen[0] || !seen[1]) {
            check.ok = false;
            check.witness = line;
            return check;
        }
    }
    check.ok = true;
    return check;
}

}  // namespace mrlab
