#ifndef MRLAB_DELTA_HPP
#define MRLAB_DELTA_HPP

#include <optional>
#include <vector>

#include "mrlab/config.hpp"

namespace mrlab {

// Collinearity profile of a configuration. For a point v of color i,
// count(v) is the number of same-color partners u such that the maximal
// line through v and u carries at least one point of another color.
//
// A singleton class has no partners, so under a strict reading it pins the
// overall delta to 0. The headline delta_star instead treats singleton
// classes as imposing no constraint (and is 1 when every class is a
// singleton); delta_star_strict minimizes over all points. The flag records
// whether the two readings can differ for this configuration.
struct DeltaProfile {
    std::vector<std::vector<std::size_t>> counts;     // per color, per point
    std::vector<std::vector<Rational>> fractions;     // count / |V_i|
    std::vector<Rational> color_min;                  // min fraction per color
    Rational delta_star;                              // classes with >= 2 points
    Rational delta_star_strict;                       // all points
    bool singleton_convention_applied = false;        // some class is a singleton
    bool all_singletons = false;
};

DeltaProfile compute_delta(const ColoredConfig& config);

// Reuses an existing line enumeration of the same configuration.
DeltaProfile compute_delta(const ColoredConfig& config,
                           const std::vector<LineRecord>& lines);

// Two-color check: true iff every line with >= 2 configuration points meets
// both colors; otherwise some monochromatic line is returned as witness.
struct MrCheck {
    bool ok = false;
    std::optional<LineRecord> witness;
};

MrCheck is_mr_configuration(const ColoredConfig& config);

}  // namespace mrlab

#endif
