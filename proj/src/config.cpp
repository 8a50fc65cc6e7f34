#include "mrlab/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mrlab {

using nlohmann::json;

std::string field_name(FieldTag field) {
    return field == FieldTag::Rational ? "rational" : "gaussian";
}

FieldTag parse_field(const std::string& name) {
    if (name == "rational") return FieldTag::Rational;
    if (name == "gaussian") return FieldTag::Gaussian;
    throw ParseError("unknown field \"" + name + "\" (expected \"rational\" or \"gaussian\")");
}

namespace {

std::string point_str(const Point& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ",";
        out += p[i].str();
    }
    return out + ")";
}

}  // namespace

ColoredConfig ColoredConfig::create(FieldTag field, std::size_t dim,
                                    std::vector<std::vector<Point>> classes,
                                    const std::string& where) {
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError(where.empty() ? msg : where + ": " + msg);
    };

    if (dim == 0) fail("dimension must be at least 1");
    if (classes.empty()) fail("at least one color class required");

    std::map<std::string, std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].empty()) {
            fail("colors[" + std::to_string(c) + "]: empty color class");
        }
        for (std::size_t k = 0; k < classes[c].size(); ++k) {
            const Point& p = classes[c][k];
            std::string loc = "colors[" + std::to_string(c) + "][" + std::to_string(k) + "]";
            if (p.size() != dim) {
                fail(loc + ": point has " + std::to_string(p.size()) +
                     " coordinates, expected " + std::to_string(dim));
            }
            if (field == FieldTag::Rational) {
                for (const auto& coord : p) {
                    if (coord.has_imag()) {
                        fail(loc + ": imaginary coordinate in a rational configuration");
                    }
                }
            }
            auto [it, fresh] = seen.emplace(point_str(p), std::make_pair(c, k));
            if (!fresh) {
                fail(loc + ": duplicate of colors[" + std::to_string(it->second.first) +
                     "][" + std::to_string(it->second.second) + "]");
            }
        }
    }

    // Stable sort by nonincreasing size; ties keep input order.
    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return classes[a].size() > classes[b].size();
    });

    ColoredConfig config;
    config.field_ = field;
    config.dim_ = dim;
    config.original_order_ = order;
    config.classes_.reserve(classes.size());
    config.class_offsets_.reserve(classes.size());
    for (std::size_t idx : order) {
        config.class_offsets_.push_back(config.total_);
        config.total_ += classes[idx].size();
        config.classes_.push_back(std::move(classes[idx]));
    }
    return config;
}

std::vector<std::size_t> ColoredConfig::class_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(classes_.size());
    for (const auto& cls : classes_) sizes.push_back(cls.size());
    return sizes;
}

std::vector<PointRef> ColoredConfig::point_refs() const {
    std::vector<PointRef> refs;
    refs.reserve(total_);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        for (std::size_t k = 0; k < classes_[c].size(); ++k) refs.push_back({c, k});
    }
    return refs;
}

std::vector<Point> ColoredConfig::all_points() const {
    std::vector<Point> points;
    points.reserve(total_);
    for (const auto& cls : classes_) points.insert(points.end(), cls.begin(), cls.end());
    return points;
}

std::size_t ColoredConfig::global_index(const PointRef& ref) const {
    return class_offsets_.at(ref.color) + ref.index;
}

bool operator==(const ColoredConfig& a, const ColoredConfig& b) {
    if (a.field_ != b.field_ || a.dim_ != b.dim_) return false;
    if (a.classes_.size() != b.classes_.size()) return false;
    for (std::size_t c = 0; c < a.classes_.size(); ++c) {
        if (a.classes_[c].size() != b.classes_[c].size()) return false;
        for (std::size_t k = 0; k < a.classes_[c].size(); ++k) {
            if (!(a.classes_[c][k] == b.classes_[c][k])) return false;
        }
    }
    return true;
}

// --- line canonicalization ---

namespace {

// Scales a nonzero rational vector to a primitive integer vector whose first
// nonzero coordinate is positive.
Point primitive_integer_direction(const Point& dir) {
    BigInt denom_lcm(1);
    for (const auto& coord : dir) denom_lcm = lcm(denom_lcm, coord.real().get_den());
    std::vector<BigInt> scaled;
    scaled.reserve(dir.size());
    BigInt g(0);
    for (const auto& coord : dir) {
        BigInt v = coord.real().get_num() * (denom_lcm / coord.real().get_den());
        g = gcd(g, v);
        scaled.push_back(v);
    }
    for (auto& v : scaled) v /= g;  // g != 0: dir is nonzero
    for (const auto& v : scaled) {
        if (v != 0) {
            if (v < 0) {
                for (auto& w : scaled) w = -w;
            }
            break;
        }
    }
    Point out;
    out.reserve(scaled.size());
    for (auto& v : scaled) out.emplace_back(Rational(v));
    return out;
}

// Scales a nonzero gaussian vector so its first nonzero coordinate is 1.
// (There is no sign to normalize over the complex rationals.)
Point leading_one_direction(const Point& dir) {
    const Scalar* lead = nullptr;
    for (const auto& coord : dir) {
        if (!coord.is_zero()) {
            lead = &coord;
            break;
        }
    }
    Point out;
    out.reserve(dir.size());
    for (const auto& coord : dir) out.push_back(coord / *lead);
    return out;
}

// Hermitian inner product <x, u> = sum x_i * conj(u_i). Over the rationals
// conjugation is the identity and this is the ordinary dot product.
Scalar herm_dot(const Point& x, const Point& u) {
    Scalar acc;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * u[i].conj();
    return acc;
}

}  // namespace

LineKey line_key(const ColoredConfig& config, const Point& p, const Point& q) {
    Point dir(config.dim());
    bool zero = true;
    for (std::size_t i = 0; i < config.dim(); ++i) {
        dir[i] = q[i] - p[i];
        zero = zero && dir[i].is_zero();
    }
    if (zero) throw std::invalid_argument("line through coincident points");

    Point u = config.field() == FieldTag::Rational ? primitive_integer_direction(dir)
                                                   : leading_one_direction(dir);

    // Exact projection of p along u; identical for every point on the line.
    Scalar h = herm_dot(p, u) / herm_dot(u, u);
    Point base(config.dim());
    for (std::size_t i = 0; i < config.dim(); ++i) base[i] = p[i] - h * u[i];

    std::string key = point_str(u) + "|" + point_str(base);
    return LineKey{std::move(key), std::move(u), std::move(base)};
}

Scalar line_parameter(const LineRecord& line, const Point& point) {
    Point rel(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) rel[i] = point[i] - line.base[i];
    Scalar s = herm_dot(rel, line.direction) / herm_dot(line.direction, line.direction);
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (!(line.base[i] + s * line.direction[i] == point[i])) {
            throw std::logic_error("point is not on the line");
        }
    }
    return s;
}

std::vector<LineRecord> enumerate_lines(const ColoredConfig& config) {
    const std::vector<PointRef> refs = config.point_refs();
    const std::vector<Point> points = config.all_points();

    struct Group {
        Point direction;
        Point base;
        std::vector<bool> member;
        Group(std::size_t n) : member(n, false) {}
    };
    std::map<std::string, Group> groups;

    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            LineKey lk = line_key(config, points[i], points[j]);
            auto it = groups.find(lk.key);
            if (it == groups.end()) {
                Group g(points.size());
                g.direction = std::move(lk.direction);
                g.base = std::move(lk.base);
                it = groups.emplace(std::move(lk.key), std::move(g)).first;
            }
            it->second.member[i] = true;
            it->second.member[j] = true;
        }
    }

    std::vector<LineRecord> lines;
    lines.reserve(groups.size());
    for (auto& [key, group] : groups) {
        LineRecord rec;
        rec.key = key;
        rec.direction = std::move(group.direction);
        rec.base = std::move(group.base);
        for (std::size_t i = 0; i < group.member.size(); ++i) {
            if (group.member[i]) rec.members.push_back(refs[i]);
        }
        lines.push_back(std::move(rec));
    }
    return lines;
}

Partition restrict_partition(const ColoredConfig& config, std::size_t x, std::size_t y) {
    if (!(x < y && y <= config.color_count())) {
        throw std::invalid_argument("partition cut requires 0 <= x < y <= n, got x=" +
                                    std::to_string(x) + " y=" + std::to_string(y) +
                                    " n=" + std::to_string(config.color_count()));
    }
    return Partition{x, y};
}

std::vector<Point> part_points(const ColoredConfig& config, const Partition& part, int which) {
    std::vector<Point> points;
    for (std::size_t c = 0; c < config.color_count(); ++c) {
        bool take = (which == 1 && part.in_p1(c)) || (which == 2 && part.in_p2(c)) ||
                    (which == 3 && part.in_p3(c));
        if (!take) continue;
        const auto& cls = config.color_class(c);
        points.insert(points.end(), cls.begin(), cls.end());
    }
    return points;
}

std::size_t part_size(const ColoredConfig& config, const Partition& part, int which) {
    std::size_t total = 0;
    for (std::size_t c = 0; c < config.color_count(); ++c) {
        bool take = (which == 1 && part.in_p1(c)) || (which == 2 && part.in_p2(c)) ||
                    (which == 3 && part.in_p3(c));
        if (take) total += config.color_class(c).size();
    }
    return total;
}

// --- file format ---

namespace {

Scalar parse_coordinate(const json& value, const std::string& loc) {
    if (value.is_number_integer()) {
        return Scalar(Rational(value.get<std::int64_t>()));
    }
    if (value.is_string()) {
        try {
            return Scalar::parse(value.get<std::string>());
        } catch (const ParseError& err) {
            throw ParseError(loc + ": " + err.what());
        }
    }
    throw ParseError(loc + ": coordinate must be an integer or a rational string");
}

}  // namespace

ColoredConfig load_config(const std::string& bytes, const std::string& where) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& err) {
        throw ParseError((where.empty() ? std::string() : where + ": ") + err.what());
    }
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError(where.empty() ? msg : where + ": " + msg);
    };

    if (!doc.is_object()) fail("top level must be an object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "field" && key != "dim" && key != "colors" && key != "permutation") {
            fail("unknown key \"" + key + "\"");
        }
    }
    if (!doc.contains("field") || !doc["field"].is_string()) fail("missing string \"field\"");
    if (!doc.contains("dim") || !doc["dim"].is_number_unsigned()) {
        fail("missing nonnegative integer \"dim\"");
    }
    if (!doc.contains("colors") || !doc["colors"].is_array()) fail("missing array \"colors\"");

    FieldTag field = parse_field(doc["field"].get<std::string>());
    std::size_t dim = doc["dim"].get<std::size_t>();

    std::vector<std::vector<Point>> classes;
    const json& colors = doc["colors"];
    for (std::size_t c = 0; c < colors.size(); ++c) {
        if (!colors[c].is_array()) fail("colors[" + std::to_string(c) + "] must be an array");
        std::vector<Point> cls;
        for (std::size_t k = 0; k < colors[c].size(); ++k) {
            const json& raw = colors[c][k];
            std::string loc = "colors[" + std::to_string(c) + "][" + std::to_string(k) + "]";
            if (!raw.is_array()) fail(loc + " must be a coordinate array");
            Point p;
            for (std::size_t i = 0; i < raw.size(); ++i) {
                p.push_back(parse_coordinate(raw[i], loc + "[" + std::to_string(i) + "]"));
            }
            cls.push_back(std::move(p));
        }
        classes.push_back(std::move(cls));
    }
    return ColoredConfig::create(field, dim, std::move(classes), where);
}

ColoredConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str(), path);
}

std::string serialize_config(const ColoredConfig& config) {
    json colors = json::array();
    for (const auto& cls : config.classes()) {
        json jcls = json::array();
        for (const auto& p : cls) {
            json jp = json::array();
            for (const auto& coord : p) jp.push_back(coord.str());
            jcls.push_back(std::move(jp));
        }
        colors.push_back(std::move(jcls));
    }
    json doc;
    doc["field"] = field_name(config.field());
    doc["dim"] = config.dim();
    doc["colors"] = std::move(colors);
    doc["permutation"] = config.original_order();
    return doc.dump(2) + "\n";
}

}  // namespace mrlab
