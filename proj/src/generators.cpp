#include "mrlab/generators.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include "mrlab/bounds.hpp"
#include "mrlab/delta.hpp"
#include "mrlab/matrix.hpp"
#include "mrlab/report_json.hpp"
#include "mrlab/rng.hpp"

namespace mrlab {

ColoredConfig gen_collinear(const std::vector<std::size_t>& sizes, FieldTag field) {
    if (sizes.empty()) {
        throw std::invalid_argument("gen_collinear: no classes");
    }
    std::size_t total = 0;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (sizes[j] == 0) {
            throw std::invalid_argument("gen_collinear: class " + std::to_string(j + 1) +
                                        " is empty");
        }
        if (j > 0 && sizes[j] > sizes[j - 1]) {
            throw std::invalid_argument("gen_collinear: sizes must be nonincreasing");
        }
        total += sizes[j];
    }
    if (total < 2) {
        throw std::invalid_argument("gen_collinear: need at least 2 points");
    }

    const std::size_t n = sizes.size();
    std::vector<std::vector<Point>> classes(n);
    std::size_t color = 0;
    for (std::size_t p = 0; p < total; ++p) {
        while (classes[color].size() == sizes[color]) {
            color = (color + 1) % n;
        }
        classes[color].push_back({Scalar(static_cast<long>(p)), Scalar(0)});
        color = (color + 1) % n;
    }
    return ColoredConfig::create(field, 2, std::move(classes));
}

ColoredConfig gen_grid(std::size_t side, const std::string& coloring, FieldTag field) {
    if (side < 2) {
        throw std::invalid_argument("gen_grid: side must be at least 2");
    }
    const std::size_t split = (side + 1) / 2;
    std::vector<std::vector<Point>> classes;
    const auto class_of = [&](std::size_t x, std::size_t y) -> std::size_t {
        if (coloring == "rows") {
            return y;
        }
        if (coloring == "parity") {
            return (x + y) % 2;
        }
        if (coloring == "blocks") {
            return (x < split ? 0 : 1) + (y < split ? 0 : 2);
        }
        throw std::invalid_argument("gen_grid: unknown coloring '" + coloring + "'");
    };
    for (std::size_t x = 0; x < side; ++x) {
        for (std::size_t y = 0; y < side; ++y) {
            const std::size_t c = class_of(x, y);
            if (classes.size() <= c) {
                classes.resize(c + 1);
            }
            classes[c].push_back({Scalar(static_cast<long>(x)), Scalar(static_cast<long>(y))});
        }
    }
    // Colorings may leave index gaps (e.g. small "blocks" grids); drop them.
    classes.erase(std::remove_if(classes.begin(), classes.end(),
                                 [](const auto& cls) { return cls.empty(); }),
                  classes.end());
    return ColoredConfig::create(field, 2, std::move(classes));
}

namespace {

struct RawState {
    std::vector<std::vector<std::uint64_t>> cells;   // per class
    std::set<std::uint64_t> occupied;
    std::size_t total = 0;
};

struct Evaluation {
    ColoredConfig config;
    Rational delta_star;
    Rational delta_strict;
    std::size_t dim = 0;
    std::optional<Rational> bound_rec;
    Rational capped;    // min(delta_star, target)
    Rational ratio;     // dim / b_rec, 0 without a bound
};

Point cell_point(std::uint64_t code, std::size_t side, std::size_t dims) {
    Point point;
    point.reserve(dims);
    for (std::size_t d = 0; d < dims; ++d) {
        point.push_back(Scalar(static_cast<long>(code % side)));
        code /= side;
    }
    return point;
}

Evaluation evaluate(const RawState& state, const SearchParams& params) {
    std::vector<std::vector<Point>> classes;
    classes.reserve(state.cells.size());
    for (const auto& cls : state.cells) {
        std::vector<Point> points;
        points.reserve(cls.size());
        for (std::uint64_t code : cls) {
            points.push_back(cell_point(code, params.side, params.dims));
        }
        classes.push_back(std::move(points));
    }
    ColoredConfig config =
        ColoredConfig::create(FieldTag::Rational, params.dims, std::move(classes));
    const DeltaProfile profile = compute_delta(config);
    const std::size_t dim = linear_dim(config.all_points());

    Evaluation eval{std::move(config), profile.delta_star, profile.delta_star_strict,
                    dim, std::nullopt, Rational(0), Rational(0)};
    if (eval.delta_star > 0) {
        eval.bound_rec = bound_from_sizes(eval.config.class_sizes(), eval.delta_star,
                                          eval.delta_star / 2)
                             .b_rec;
        eval.ratio = Rational(BigInt(static_cast<unsigned long>(dim))) / *eval.bound_rec;
    }
    eval.capped = eval.delta_star < params.target ? eval.delta_star : params.target;
    return eval;
}

// Strict lexicographic improvement on (capped delta*, dim, dim/b_rec).
bool improves(const Evaluation& candidate, const Evaluation& incumbent) {
    if (candidate.capped != incumbent.capped) {
        return candidate.capped > incumbent.capped;
    }
    if (candidate.dim != incumbent.dim) {
        return candidate.dim > incumbent.dim;
    }
    return candidate.ratio > incumbent.ratio;
}

ArchiveEntry make_entry(std::size_t unit, std::uint64_t unit_seed, std::uint64_t iter,
                        const Evaluation& eval) {
    return ArchiveEntry{unit, unit_seed, iter,    eval.config,
                        eval.delta_star, eval.delta_strict, eval.dim, eval.bound_rec};
}

std::vector<ArchiveEntry> run_unit(const SearchParams& params, std::size_t unit,
                                   std::uint64_t unit_iterations, std::uint64_t total_cells) {
    const std::uint64_t unit_seed = params.seed + static_cast<std::uint64_t>(unit);
    SplitMix64 rng(unit_seed);
    const std::size_t n = params.colors;

    RawState state;
    state.cells.resize(n);
    const auto place = [&](std::size_t cls, std::uint64_t cell) {
        state.cells[cls].push_back(cell);
        state.occupied.insert(cell);
        ++state.total;
    };

    // Starting points alternate between the two interesting regimes: even
    // units spread points over the whole grid (high dimension, delta*
    // usually 0), odd units fill parallel grid lines with alternating
    // colors (delta* > 0, low dimension). Neither regime is reachable from
    // the other by single improving moves, so seeding both matters.
    if (unit % 2 == 1 && params.budget <= params.side * params.side) {
        const std::size_t axis = rng.below(params.dims);
        std::size_t shift = axis;
        if (params.dims > 1) {
            while (shift == axis) {
                shift = rng.below(params.dims);
            }
        }
        std::vector<std::size_t> fixed(params.dims);
        for (std::size_t d = 0; d < params.dims; ++d) {
            fixed[d] = rng.below(params.side);
        }
        for (std::size_t p = 0; p < params.budget; ++p) {
            std::uint64_t cell = 0;
            std::uint64_t weight = 1;
            for (std::size_t d = 0; d < params.dims; ++d) {
                std::size_t coord = fixed[d];
                if (d == axis) {
                    coord = p % params.side;
                } else if (d == shift) {
                    coord = p / params.side;
                }
                cell += coord * weight;
                weight *= params.side;
            }
            place(p % n, cell);
        }
    }
    std::size_t cls = state.total % n;
    while (state.total < params.budget) {
        const std::uint64_t cell = rng.below(total_cells);
        if (state.occupied.count(cell)) {
            continue;
        }
        place(cls, cell);
        cls = (cls + 1) % n;
    }

    std::vector<ArchiveEntry> archive;
    Evaluation current = evaluate(state, params);
    archive.push_back(make_entry(unit, unit_seed, 0, current));

    for (std::uint64_t iter = 1; iter <= unit_iterations; ++iter) {
        RawState next = state;
        const std::uint64_t move = rng.below(4);
        bool feasible = false;
        switch (move) {
            case 0: {    // relocate one point
                const std::size_t c = rng.below(n);
                const std::size_t idx = rng.below(next.cells[c].size());
                const std::uint64_t cell = rng.below(total_cells);
                if (!next.occupied.count(cell)) {
                    next.occupied.erase(next.cells[c][idx]);
                    next.cells[c][idx] = cell;
                    next.occupied.insert(cell);
                    feasible = true;
                }
                break;
            }
            case 1: {    // exchange the colors of two points
                const std::size_t c1 = rng.below(n);
                const std::size_t c2 = rng.below(n);
                if (c1 != c2) {
                    const std::size_t i1 = rng.below(next.cells[c1].size());
                    const std::size_t i2 = rng.below(next.cells[c2].size());
                    std::swap(next.cells[c1][i1], next.cells[c2][i2]);
                    feasible = true;
                }
                break;
            }
            case 2: {    // add a point
                const std::size_t c = rng.below(n);
                const std::uint64_t cell = rng.below(total_cells);
                if (next.total < params.budget && !next.occupied.count(cell)) {
                    next.cells[c].push_back(cell);
                    next.occupied.insert(cell);
                    ++next.total;
                    feasible = true;
                }
                break;
            }
            default: {    // remove a point, never emptying a class
                const std::size_t c = rng.below(n);
                const std::size_t idx = rng.below(next.cells[c].size());
                if (next.cells[c].size() > 1) {
                    next.occupied.erase(next.cells[c][idx]);
                    next.cells[c].erase(next.cells[c].begin() +
                                        static_cast<std::ptrdiff_t>(idx));
                    --next.total;
                    feasible = true;
                }
                break;
            }
        }
        if (!feasible) {
            continue;
        }
        Evaluation candidate = evaluate(next, params);
        if (improves(candidate, current)) {
            state = std::move(next);
            current = std::move(candidate);
            archive.push_back(make_entry(unit, unit_seed, iter, current));
        }
    }
    return archive;
}

}  // namespace

std::vector<ArchiveEntry> run_search(const SearchParams& params) {
    if (params.colors < 2) {
        throw std::invalid_argument("run_search: need at least 2 colors");
    }
    if (params.budget < params.colors) {
        throw std::invalid_argument("run_search: budget below one point per color");
    }
    if (params.side < 2 || params.dims == 0) {
        throw std::invalid_argument("run_search: degenerate grid");
    }
    if (params.restarts == 0 || params.workers == 0) {
        throw std::invalid_argument("run_search: restarts and workers must be positive");
    }

    std::uint64_t total_cells = 1;
    for (std::size_t d = 0; d < params.dims; ++d) {
        if (total_cells > std::numeric_limits<std::uint64_t>::max() / params.side) {
            throw std::invalid_argument("run_search: grid too large to index");
        }
        total_cells *= params.side;
    }
    if (total_cells < params.budget) {
        throw std::invalid_argument("run_search: budget exceeds the number of grid cells");
    }

    // Iterations are distributed over logical units up front; a unit's
    // workload and stream depend only on (params, unit), so the merged
    // archive is identical for every worker count.
    const std::uint64_t restarts = params.restarts;
    std::vector<std::uint64_t> unit_iterations(params.restarts,
                                               params.iterations / restarts);
    for (std::uint64_t u = 0; u < params.iterations % restarts; ++u) {
        ++unit_iterations[u];
    }

    std::vector<std::vector<ArchiveEntry>> results(params.restarts);
    std::vector<std::exception_ptr> failures(params.restarts);
    const std::size_t workers = std::min(params.workers, params.restarts);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t u = w; u < params.restarts; u += workers) {
                try {
                    results[u] = run_unit(params, u, unit_iterations[u], total_cells);
                } catch (...) {
                    failures[u] = std::current_exception();
                }
            }
        });
    }
    for (auto& thread : pool) {
        thread.join();
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::vector<ArchiveEntry> merged;
    for (auto& part : results) {
        for (auto& entry : part) {
            merged.push_back(std::move(entry));
        }
    }
    return merged;
}

std::string archive_to_jsonl(const std::vector<ArchiveEntry>& archive) {
    std::string out;
    for (const ArchiveEntry& entry : archive) {
        out += to_json(entry).dump();
        out += '\n';
    }
    return out;
}

std::optional<std::string> verify_archive(const std::vector<ArchiveEntry>& archive) {
    for (std::size_t i = 0; i < archive.size(); ++i) {
        const ArchiveEntry& entry = archive[i];
        const auto complain = [&](const std::string& what) {
            return "entry " + std::to_string(i) + " (unit " + std::to_string(entry.unit) +
                   ", iter " + std::to_string(entry.iter) + "): " + what;
        };
        const DeltaProfile profile = compute_delta(entry.config);
        if (profile.delta_star < entry.delta_star) {
            return complain("recomputed delta* " + rational_str(profile.delta_star) +
                            " below recorded " + rational_str(entry.delta_star));
        }
        if (profile.delta_star != entry.delta_star ||
            profile.delta_star_strict != entry.delta_strict) {
            return complain("recorded delta values are not the measured ones");
        }
        const std::size_t dim = linear_dim(entry.config.all_points());
        if (dim != entry.dim) {
            return complain("recomputed dim " + std::to_string(dim) + " != recorded " +
                            std::to_string(entry.dim));
        }
        if (entry.bound_rec) {
            const Rational recomputed =
                bound_from_sizes(entry.config.class_sizes(), entry.delta_star,
                                 entry.delta_star / 2)
                    .b_rec;
            if (recomputed != *entry.bound_rec) {
                return complain("recomputed b_rec " + rational_str(recomputed) +
                                " != recorded " + rational_str(*entry.bound_rec));
            }
            if (Rational(BigInt(static_cast<unsigned long>(dim))) > *entry.bound_rec) {
                return complain("dim exceeds b_rec");
            }
        } else if (entry.delta_star > 0) {
            return complain("bound entry missing despite positive delta*");
        }
    }
    return std::nullopt;
}

}  // namespace mrlab
