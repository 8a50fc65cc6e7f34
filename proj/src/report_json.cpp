#include "mrlab/report_json.hpp"

namespace mrlab {

using nlohmann::json;

namespace {

json point_json(const Point& point) {
    json coords = json::array();
    for (const Scalar& coord : point) {
        coords.push_back(coord.str());
    }
    return coords;
}

json ref_json(const PointRef& ref) {
    return json{{"color", ref.color + 1}, {"index", ref.index}};
}

json refs_json(const std::vector<PointRef>& refs) {
    json list = json::array();
    for (const PointRef& ref : refs) {
        list.push_back(ref_json(ref));
    }
    return list;
}

json rational_json(const Rational& value) { return rational_str(value); }

}  // namespace

json to_json(const DeltaProfile& profile) {
    json counts = json::array();
    json fractions = json::array();
    for (std::size_t c = 0; c < profile.counts.size(); ++c) {
        counts.push_back(profile.counts[c]);
        json row = json::array();
        for (const Rational& frac : profile.fractions[c]) {
            row.push_back(rational_json(frac));
        }
        fractions.push_back(std::move(row));
    }
    json per_color = json::array();
    for (const Rational& least : profile.color_min) {
        per_color.push_back(rational_json(least));
    }
    return json{{"counts", std::move(counts)},
                {"fractions", std::move(fractions)},
                {"color_min", std::move(per_color)},
                {"delta_star", rational_json(profile.delta_star)},
                {"delta_star_strict", rational_json(profile.delta_star_strict)},
                {"singleton_convention_applied", profile.singleton_convention_applied},
                {"all_singletons", profile.all_singletons}};
}

json to_json(const LineRecord& line) {
    return json{{"key", line.key},
                {"direction", point_json(line.direction)},
                {"base", point_json(line.base)},
                {"members", refs_json(line.members)}};
}

json to_json(const std::vector<LineRecord>& lines) {
    json list = json::array();
    for (const LineRecord& line : lines) {
        list.push_back(to_json(line));
    }
    return json{{"count", lines.size()}, {"lines", std::move(list)}};
}

json to_json(const MrCheck& check) {
    json value{{"ok", check.ok}};
    if (check.witness) {
        value["monochromatic_line"] = to_json(*check.witness);
    }
    return value;
}

json to_json(const TripleSystem& system) {
    json triples = json::array();
    for (const auto& triple : system.triples) {
        triples.push_back(json::array({triple[0], triple[1], triple[2]}));
    }
    return json{{"r", system.ground}, {"triples", std::move(triples)}};
}

TripleSystem triples_from_json(const json& value, const std::string& where) {
    const std::string prefix = where.empty() ? "" : where + ": ";
    if (!value.is_object() || !value.contains("r") || !value.contains("triples")) {
        throw ParseError(prefix + "triple system needs keys \"r\" and \"triples\"");
    }
    if (!value["r"].is_number_unsigned()) {
        throw ParseError(prefix + "\"r\" must be a nonnegative integer");
    }
    TripleSystem system;
    system.ground = value["r"].get<std::size_t>();
    if (!value["triples"].is_array()) {
        throw ParseError(prefix + "\"triples\" must be an array");
    }
    for (const auto& item : value["triples"]) {
        if (!item.is_array() || item.size() != 3 || !item[0].is_number_unsigned() ||
            !item[1].is_number_unsigned() || !item[2].is_number_unsigned()) {
            throw ParseError(prefix + "each triple must be three nonnegative integers");
        }
        system.triples.push_back({item[0].get<std::size_t>(), item[1].get<std::size_t>(),
                                  item[2].get<std::size_t>()});
    }
    return system;
}

json to_json(const TripleCheck& check) {
    json value{{"ok", check.ok}};
    if (!check.ok) {
        value["violation"] = check.violation;
    }
    return value;
}

json to_json(const DesignParams& params) {
    return json{{"q", params.q}, {"k", params.k}, {"t", params.t}};
}

json to_json(const ClaimReport& report) {
    json value{{"c1", rational_json(report.c1)},
               {"c2", rational_json(report.c2)},
               {"delta_used", rational_json(report.delta_used)},
               {"delta_star", rational_json(report.delta_star)},
               {"delta_star_strict", rational_json(report.delta_star_strict)},
               {"convention_risk", report.convention_risk},
               {"delta_valid", report.delta_valid},
               {"p1_size", report.p1_size},
               {"p2_size", report.p2_size},
               {"p3_size", report.p3_size},
               {"vy_size", report.vy_size},
               {"size_ineq_ok", report.size_ineq_ok},
               {"tail_ineq_ok", report.tail_ineq_ok},
               {"hypotheses_ok", report.hypotheses_ok},
               {"ok", report.ok}};
    if (!report.hypotheses_ok) {
        value["failure_reason"] = report.failure_reason;
        return value;
    }
    value["a2_design"] = to_json(report.a2_params);
    value["k_threshold"] = rational_json(report.k_threshold);
    value["q_ok"] = report.q_ok;
    value["t_ok"] = report.t_ok;
    value["k_ok"] = report.k_ok;
    json classes = json::array();
    for (const auto& bound : report.class_bounds) {
        classes.push_back(json{{"color", bound.color},
                               {"size", bound.size},
                               {"headroom", rational_json(bound.headroom)},
                               {"threshold", rational_json(bound.threshold)},
                               {"ok", bound.ok}});
    }
    value["class_bounds"] = std::move(classes);
    return value;
}

json to_json(const PartitionDimReport& report) {
    return json{{"claim", to_json(report.claim)},
                {"dim_p1", report.dim_p1},
                {"dim_p2", report.dim_p2},
                {"dim_bound", rational_json(report.dim_bound)},
                {"rank_a2", report.rank_a2},
                {"rank_m2", report.rank_m2},
                {"rank_a2m2", report.rank_a2m2},
                {"rank_a1m1", report.rank_a1m1},
                {"rank_a2_floor", rational_json(report.rank_a2_floor)},
                {"rank_a2_ok", report.rank_a2_ok},
                {"product_chain_ok", report.product_chain_ok},
                {"rank_equal_ok", report.rank_equal_ok},
                {"dim_ok", report.dim_ok},
                {"ok", report.ok}};
}

json to_json(const EpsilonDecomposition& decomposition) {
    json blocks = json::array();
    for (const auto& block : decomposition.blocks) {
        blocks.push_back(json{{"lo", block.lo}, {"hi", block.hi}});
    }
    return json{{"delta", rational_json(decomposition.delta)},
                {"eps", rational_json(decomposition.eps)},
                {"c_eps", rational_json(decomposition.c_eps)},
                {"is_large", decomposition.is_large},
                {"large_indices", decomposition.large_indices},
                {"blocks", std::move(blocks)}};
}

json to_json(const TailReport& report) {
    json items = json::array();
    for (const auto& item : report.items) {
        items.push_back(json{{"block", item.block},
                             {"offset", item.offset},
                             {"tail_sum", item.tail_sum.get_str()},
                             {"allowance", rational_json(item.allowance)},
                             {"ok", item.ok}});
    }
    json floors = json::array();
    for (const auto& floor : report.floors) {
        floors.push_back(json{{"block", floor.block},
                              {"vy", floor.vy},
                              {"floor", rational_json(floor.floor)},
                              {"ok", floor.ok}});
    }
    return json{{"items", std::move(items)}, {"floors", std::move(floors)}, {"ok", report.ok}};
}

json to_json(const BoundValues& values) {
    json per_block = json::array();
    json recursion = json::array();
    for (std::size_t i = 0; i < values.per_block.size(); ++i) {
        per_block.push_back(rational_json(values.per_block[i]));
        recursion.push_back(rational_json(values.recursion[i]));
    }
    return json{{"decomposition", to_json(values.decomposition)},
                {"per_block", std::move(per_block)},
                {"recursion", std::move(recursion)},
                {"b_rec", rational_json(values.b_rec)},
                {"b_sum", rational_json(values.b_sum)},
                {"b_coarse", rational_json(values.b_coarse)}};
}

json to_json(const BoundReport& report) {
    return json{{"values", to_json(report.values)},
                {"delta_star", rational_json(report.delta_star)},
                {"measured", report.measured},
                {"block_dim", report.block_dim},
                {"dim_v", report.dim_v},
                {"adim_v", report.adim_v},
                {"step_chain_ok", report.step_chain_ok},
                {"adim_le_dim", report.adim_le_dim},
                {"dim_le_rec", report.dim_le_rec},
                {"rec_eq_sum", report.rec_eq_sum},
                {"sum_le_coarse", report.sum_le_coarse},
                {"half_eps", to_json(report.half_eps)},
                {"ok", report.ok}};
}

json to_json(const CoarseReport& report) {
    json value{{"eps", rational_json(report.eps)},
               {"k_star", report.k_star},
               {"k_lo", report.k_lo},
               {"k_hi", report.k_hi},
               {"f_lo", rational_json(report.f_lo)},
               {"f_hi", rational_json(report.f_hi)},
               {"f_max", rational_json(report.f_max)}};
    if (report.has_chain) {
        value["c_eps"] = rational_json(report.c_eps);
        value["chain_ok"] = report.chain_ok;
    }
    return value;
}

json to_json(const ArchiveEntry& entry) {
    json value{{"unit", entry.unit},
               {"seed", entry.seed},
               {"iter", entry.iter},
               {"config", json::parse(serialize_config(entry.config))},
               {"delta", rational_json(entry.delta_star)},
               {"delta_strict", rational_json(entry.delta_strict)},
               {"dim", entry.dim}};
    if (entry.bound_rec) {
        value["bound_rec"] = rational_json(*entry.bound_rec);
    } else {
        value["bound_rec"] = nullptr;
    }
    return value;
}

}  // namespace mrlab
