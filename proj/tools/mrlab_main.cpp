#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mrlab/assembly.hpp"
#include "mrlab/bounds.hpp"
#include "mrlab/config.hpp"
#include "mrlab/delta.hpp"
#include "mrlab/generators.hpp"
#include "mrlab/matrix_io.hpp"
#include "mrlab/report_json.hpp"
#include "mrlab/triples.hpp"

namespace {

using nlohmann::json;

// stdout carries exactly one JSON document; logs and errors go to stderr.
int emit(const json& value, int code) {
    std::cout << value.dump(2) << "\n";
    return code;
}

int fail(const std::string& kind, const std::string& message, int code) {
    std::cerr << "mrlab: " << message << "\n";
    return emit(json{{"error", message}, {"kind", kind}}, code);
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw mrlab::ParseError(path + ": cannot open for writing");
    }
    out << bytes;
}

std::optional<mrlab::Rational> parse_optional(const std::string& text, const char* flag) {
    if (text.empty()) {
        return std::nullopt;
    }
    try {
        return mrlab::parse_rational(text);
    } catch (const mrlab::ParseError& err) {
        throw mrlab::ParseError(std::string(flag) + ": " + err.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace mrlab;

    CLI::App app{"exact toolkit for colored point configurations"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate a fixture configuration");
    gen->require_subcommand(1);
    std::vector<std::size_t> gen_sizes;
    std::string gen_field = "rational";
    std::string gen_out;
    auto* gen_collinear_cmd = gen->add_subcommand("collinear", "points 0..m-1 on the x-axis");
    gen_collinear_cmd->add_option("--sizes", gen_sizes, "class sizes, nonincreasing")
        ->required()
        ->delimiter(',');
    gen_collinear_cmd->add_option("--field", gen_field, "rational|gaussian");
    gen_collinear_cmd->add_option("--out", gen_out, "also write the JSON here");
    std::size_t grid_side = 3;
    std::string grid_coloring = "rows";
    auto* gen_grid_cmd = gen->add_subcommand("grid", "side x side integer grid");
    gen_grid_cmd->add_option("--side", grid_side, "grid side length")->required();
    gen_grid_cmd->add_option("--coloring", grid_coloring, "rows|parity|blocks")->required();
    gen_grid_cmd->add_option("--field", gen_field, "rational|gaussian");
    gen_grid_cmd->add_option("--out", gen_out, "also write the JSON here");

    // --- measurements ---
    std::string config_path;
    auto* delta_cmd = app.add_subcommand("delta", "collinearity profile and delta*");
    delta_cmd->add_option("config", config_path, "configuration JSON file")->required();
    auto* dim_cmd = app.add_subcommand("dim", "linear and affine dimension");
    dim_cmd->add_option("config", config_path, "configuration JSON file")->required();
    auto* lines_cmd = app.add_subcommand("lines", "maximal line enumeration");
    lines_cmd->add_option("config", config_path, "configuration JSON file")->required();

    // --- design-audit ---
    std::size_t cut_x = 0, cut_y = 0;
    std::string c1_text, c2_text, delta_text, export_path;
    auto* audit_cmd = app.add_subcommand("design-audit",
                                         "assemble the coefficient matrix for a cut and "
                                         "audit its design parameters");
    audit_cmd->add_option("config", config_path)->required();
    audit_cmd->add_option("--x", cut_x, "last color of P1 (0 for an empty P1)")->required();
    audit_cmd->add_option("--y", cut_y, "last color of P2")->required();
    audit_cmd->add_option("--c1", c1_text, "claim constant c1 (with --c2)");
    audit_cmd->add_option("--c2", c2_text, "claim constant c2 (with --c1)");
    audit_cmd->add_option("--delta", delta_text, "asserted delta (default: strict delta*)");
    audit_cmd->add_option("--export", export_path, "write the coefficient matrix here");

    // --- bound ---
    std::string eps_text;
    bool optimize = false;
    std::size_t grid_points = 16;
    auto* bound_cmd = app.add_subcommand("bound", "dimension bounds from the recursion");
    bound_cmd->add_option("config", config_path)->required();
    bound_cmd->add_option("--eps", eps_text, "epsilon as p/q");
    bound_cmd->add_flag("--optimize", optimize, "scan epsilon instead of fixing it");
    bound_cmd->add_option("--grid", grid_points, "scan grid size for --optimize");
    bound_cmd->add_option("--delta", delta_text, "delta (default: measured delta*)");

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "check a certificate or hypothesis");
    verify->require_subcommand(1);
    std::size_t triples_r = 0;
    std::string triples_file;
    auto* verify_triples_cmd = verify->add_subcommand("triples", "triple-system contract");
    verify_triples_cmd->add_option("--r", triples_r, "ground-set size to build and check");
    verify_triples_cmd->add_option("--file", triples_file, "check this system instead");
    auto* verify_tail_cmd = verify->add_subcommand("tail", "block tail estimates");
    verify_tail_cmd->add_option("config", config_path)->required();
    verify_tail_cmd->add_option("--eps", eps_text, "epsilon (default: delta/2)");
    verify_tail_cmd->add_option("--delta", delta_text, "delta (default: measured delta*)");
    auto* verify_lemma_cmd = verify->add_subcommand("lemma31", "partition dimension bound");
    verify_lemma_cmd->add_option("config", config_path)->required();
    verify_lemma_cmd->add_option("--x", cut_x)->required();
    verify_lemma_cmd->add_option("--y", cut_y)->required();
    verify_lemma_cmd->add_option("--c1", c1_text)->required();
    verify_lemma_cmd->add_option("--c2", c2_text)->required();
    verify_lemma_cmd->add_option("--delta", delta_text, "asserted delta (default: strict delta*)");
    std::string matrix_path;
    auto* verify_design_cmd = verify->add_subcommand("thm22", "rank certificate of a matrix");
    verify_design_cmd->add_option("--matrix", matrix_path, "sparse matrix text file")
        ->required();

    // --- search ---
    SearchParams search;
    std::string target_text, out_path;
    auto* search_cmd = app.add_subcommand("search", "seeded hill-climbing search");
    search_cmd->add_option("--colors", search.colors, "number of classes");
    search_cmd->add_option("--side", search.side, "grid side");
    search_cmd->add_option("--dims", search.dims, "ambient dimension");
    search_cmd->add_option("--budget", search.budget, "maximum points");
    search_cmd->add_option("--iters", search.iterations, "total iterations")->required();
    search_cmd->add_option("--seed", search.seed, "base seed");
    search_cmd->add_option("--restarts", search.restarts, "independent units");
    search_cmd->add_option("--workers", search.workers, "threads");
    search_cmd->add_option("--target", target_text, "delta* target as p/q (default 1/2)");
    search_cmd->add_option("--out", out_path, "write the JSONL archive here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        std::cerr << app.help();
        return emit(json{{"help", true}}, 0);
    } catch (const CLI::ParseError& err) {
        return fail("usage", err.what(), 2);
    }

    try {
        if (gen_collinear_cmd->parsed() || gen_grid_cmd->parsed()) {
            const FieldTag field = parse_field(gen_field);
            const ColoredConfig config =
                gen_collinear_cmd->parsed() ? gen_collinear(gen_sizes, field)
                                            : gen_grid(grid_side, grid_coloring, field);
            const std::string bytes = serialize_config(config);
            if (!gen_out.empty()) {
                write_file(gen_out, bytes);
            }
            std::cout << bytes;
            return 0;
        }

        if (delta_cmd->parsed()) {
            return emit(to_json(compute_delta(load_config_file(config_path))), 0);
        }

        if (dim_cmd->parsed()) {
            const ColoredConfig config = load_config_file(config_path);
            const auto points = config.all_points();
            return emit(json{{"linear_dim", linear_dim(points)},
                             {"affine_dim", affine_dim(points)}},
                        0);
        }

        if (lines_cmd->parsed()) {
            return emit(to_json(enumerate_lines(load_config_file(config_path))), 0);
        }

        if (audit_cmd->parsed()) {
            const ColoredConfig config = load_config_file(config_path);
            const Partition part = restrict_partition(config, cut_x, cut_y);
            const Assembly assembly = assemble(config, part);
            json out{{"x", part.x},
                     {"y", part.y},
                     {"extraordinary_lines", assembly.lines.size()},
                     {"rows", assembly.coefficients.rows()},
                     {"full_design", to_json(audit_design(assembly.coefficients))},
                     {"a2_design", to_json(audit_design(assembly.block_a2))}};
            if (!export_path.empty()) {
                write_file(export_path,
                           matrix_to_text(assembly.coefficients, config.field()));
                out["exported"] = export_path;
            }
            if (c1_text.empty() != c2_text.empty()) {
                return fail("usage", "--c1 and --c2 must be supplied together", 2);
            }
            if (c1_text.empty()) {
                return emit(out, 0);
            }
            const ClaimReport claim =
                audit_claim(config, assembly, parse_rational(c1_text),
                            parse_rational(c2_text), parse_optional(delta_text, "--delta"));
            out["claim"] = to_json(claim);
            return emit(out, claim.ok ? 0 : 1);
        }

        if (bound_cmd->parsed()) {
            const ColoredConfig config = load_config_file(config_path);
            std::optional<Rational> delta = parse_optional(delta_text, "--delta");
            if (!delta) {
                delta = compute_delta(config).delta_star;
            }
            if (!optimize && eps_text.empty()) {
                return fail("usage", "bound needs --eps or --optimize", 2);
            }
            if (optimize && !eps_text.empty()) {
                return fail("usage", "--eps and --optimize are mutually exclusive", 2);
            }
            json out;
            const BoundReport report = [&] {
                if (optimize) {
                    auto [eps_star, rep] = optimize_epsilon(config, *delta, grid_points);
                    out["eps_star"] = rational_str(eps_star);
                    out["coarse"] = to_json(coarse_constants(eps_star, *delta));
                    return rep;
                }
                const Rational eps = parse_rational(eps_text);
                out["coarse"] = to_json(coarse_constants(eps, *delta));
                return theorem_bound(config, *delta, eps);
            }();
            out["report"] = to_json(report);
            return emit(out, report.ok ? 0 : 1);
        }

        if (verify_triples_cmd->parsed()) {
            if ((triples_r == 0) == triples_file.empty()) {
                return fail("usage", "verify triples needs exactly one of --r / --file", 2);
            }
            TripleSystem system;
            if (triples_r != 0) {
                system = build_triples(triples_r);
            } else {
                std::ifstream in(triples_file, std::ios::binary);
                if (!in) {
                    throw ParseError(triples_file + ": cannot open");
                }
                json raw = json::parse(in, nullptr, true);
                system = triples_from_json(raw, triples_file);
            }
            const TripleCheck check = verify_triples(system);
            return emit(json{{"r", system.ground},
                             {"count", system.triples.size()},
                             {"check", to_json(check)}},
                        check.ok ? 0 : 1);
        }

        if (verify_tail_cmd->parsed()) {
            const ColoredConfig config = load_config_file(config_path);
            Rational delta = parse_optional(delta_text, "--delta")
                                 .value_or(compute_delta(config).delta_star);
            const std::optional<Rational> eps = parse_optional(eps_text, "--eps");
            const EpsilonDecomposition decomposition =
                classify_indices(config.class_sizes(), delta, eps.value_or(delta / 2));
            const TailReport report = verify_tail_bound(decomposition, config.class_sizes());
            return emit(json{{"decomposition", to_json(decomposition)},
                             {"tail", to_json(report)}},
                        report.ok ? 0 : 1);
        }

        if (verify_lemma_cmd->parsed()) {
            const ColoredConfig config = load_config_file(config_path);
            const Partition part = restrict_partition(config, cut_x, cut_y);
            const Assembly assembly = assemble(config, part);
            const PartitionDimReport report =
                verify_partition_dim(config, assembly, parse_rational(c1_text),
                                     parse_rational(c2_text),
                                     parse_optional(delta_text, "--delta"));
            return emit(to_json(report), report.ok ? 0 : 1);
        }

        if (verify_design_cmd->parsed()) {
            const LoadedMatrix loaded = load_matrix_file(matrix_path);
            const DesignParams params = audit_design(loaded.matrix);
            const std::size_t rank = exact_rank(loaded.matrix);
            json out{{"rows", loaded.matrix.rows()},
                     {"cols", loaded.matrix.cols()},
                     {"design", to_json(params)},
                     {"rank", rank}};
            if (params.k == 0) {
                out["certificate"] = nullptr;
                out["ok"] = false;
                std::cerr << "mrlab: a column has empty support, no certificate\n";
                return emit(out, 1);
            }
            const Rational certificate = design_rank_bound(loaded.matrix.cols(), params);
            const bool ok = Rational(BigInt(static_cast<unsigned long>(rank))) >= certificate;
            out["certificate"] = rational_str(certificate);
            out["ok"] = ok;
            return emit(out, ok ? 0 : 1);
        }

        if (search_cmd->parsed()) {
            if (!target_text.empty()) {
                search.target = parse_rational(target_text);
            }
            const std::vector<ArchiveEntry> archive = run_search(search);
            if (const auto mismatch = verify_archive(archive)) {
                return fail("invariant", "archive re-verification failed: " + *mismatch, 1);
            }
            json out{{"entries", archive.size()},
                     {"units", search.restarts},
                     {"iterations", search.iterations},
                     {"seed", search.seed}};
            const ArchiveEntry* best = nullptr;
            for (const ArchiveEntry& entry : archive) {
                if (best == nullptr) {
                    best = &entry;
                    continue;
                }
                const Rational a = entry.delta_star < search.target ? entry.delta_star
                                                                    : search.target;
                const Rational b = best->delta_star < search.target ? best->delta_star
                                                                    : search.target;
                if (a > b || (a == b && entry.dim > best->dim)) {
                    best = &entry;
                }
            }
            if (best != nullptr) {
                out["best"] = to_json(*best);
            }
            if (!out_path.empty()) {
                write_file(out_path, archive_to_jsonl(archive));
                out["archive_path"] = out_path;
            } else {
                json list = json::array();
                for (const ArchiveEntry& entry : archive) {
                    list.push_back(to_json(entry));
                }
                out["archive"] = std::move(list);
            }
            return emit(out, 0);
        }

        return fail("usage", "no subcommand", 2);
    } catch (const ParseError& err) {
        return fail("parse", err.what(), 2);
    } catch (const HypothesisError& err) {
        return fail("hypothesis", err.what(), 1);
    } catch (const std::invalid_argument& err) {
        return fail("usage", err.what(), 2);
    } catch (const std::logic_error& err) {
        return fail("invariant", err.what(), 1);
    } catch (const std::exception& err) {
        return fail("internal", err.what(), 1);
    }
}
