#ifndef MRLAB_GENERATORS_HPP
#define MRLAB_GENERATORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrlab/config.hpp"

namespace mrlab {

// Collinear fixture: sum(sizes) points at x = 0, 1, 2, ... on the x-axis of
// the plane, colors dealt round-robin (a full class passes its turn).
// Sizes must be positive and nonincreasing.
ColoredConfig gen_collinear(const std::vector<std::size_t>& sizes,
                            FieldTag field = FieldTag::Rational);

// side x side integer grid, colored by one of:
//   "rows"    color = y coordinate (side collinear classes)
//   "parity"  color = (x + y) mod 2
//   "blocks"  quadrant of the cell, split at ceil(side/2)
ColoredConfig gen_grid(std::size_t side, const std::string& coloring,
                       FieldTag field = FieldTag::Rational);

// Hill-climbing search for small high-dimension configurations with large
// delta*. The run is split into `restarts` independent units; unit u uses
// the stream seeded with seed + u, so the archive depends only on the
// parameters, never on scheduling. Units are distributed over `workers`
// threads.
struct SearchParams {
    std::size_t colors = 2;
    std::size_t side = 6;          // coordinates are drawn from [0, side)^dims
    std::size_t dims = 3;
    std::size_t budget = 12;       // maximum number of points
    std::uint64_t iterations = 0;  // total over all units
    std::uint64_t seed = 0;
    std::size_t restarts = 4;
    std::size_t workers = 1;
    Rational target = Rational(1, 2);   // delta* beyond this is not rewarded
};

// One accepted configuration. `iter` is 0 for a unit's starting point.
struct ArchiveEntry {
    std::size_t unit = 0;
    std::uint64_t seed = 0;        // the unit's stream seed
    std::uint64_t iter = 0;
    ColoredConfig config;
    Rational delta_star;           // lenient measurement
    Rational delta_strict;
    std::size_t dim = 0;
    // b_rec at eps = delta*/2; absent when delta* is 0.
    std::optional<Rational> bound_rec;
};

std::vector<ArchiveEntry> run_search(const SearchParams& params);

// One JSON object per line, in (unit, iter) order.
std::string archive_to_jsonl(const std::vector<ArchiveEntry>& archive);

// Recomputes delta*, dim and the bound of every entry and checks them
// against the recorded values (and dim <= b_rec where defined). Returns an
// explanation for the first mismatch, or nothing when all entries check out.
std::optional<std::string> verify_archive(const std::vector<ArchiveEntry>& archive);

}  // namespace mrlab

#endif
