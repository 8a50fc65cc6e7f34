#ifndef MRLAB_CONFIG_HPP
#define MRLAB_CONFIG_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mrlab/matrix.hpp"
#include "mrlab/scalar.hpp"

namespace mrlab {

enum class FieldTag { Rational, Gaussian };

std::string field_name(FieldTag field);
FieldTag parse_field(const std::string& name);

// (color, index-within-color), both 0-based, in canonical (sorted) order.
struct PointRef {
    std::size_t color;
    std::size_t index;

    friend bool operator==(const PointRef&, const PointRef&) = default;
    friend auto operator<=>(const PointRef&, const PointRef&) = default;
};

// Colored point configuration. Classes are pairwise disjoint, duplicate-free,
// nonempty, and kept sorted by nonincreasing size; every point has exactly
// `dim` coordinates. Rational-tagged configurations contain no imaginary
// parts. Instances are immutable once built.
class ColoredConfig {
public:
    // Validates everything and sorts classes by nonincreasing size (stable).
    // `where` prefixes error messages, e.g. a file name.
    static ColoredConfig create(FieldTag field, std::size_t dim,
                                std::vector<std::vector<Point>> classes,
                                const std::string& where = "");

    FieldTag field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::size_t color_count() const { return classes_.size(); }
    std::size_t point_count() const { return total_; }

    const std::vector<std::vector<Point>>& classes() const { return classes_; }
    const std::vector<Point>& color_class(std::size_t color) const { return classes_.at(color); }
    const Point& point(const PointRef& ref) const { return classes_.at(ref.color).at(ref.index); }

    // classes()[i] was input class original_order()[i].
    const std::vector<std::size_t>& original_order() const { return original_order_; }

    std::vector<std::size_t> class_sizes() const;

    // Flattened enumeration: color 0 first, input order inside a class.
    std::vector<PointRef> point_refs() const;
    std::vector<Point> all_points() const;
    std::size_t global_index(const PointRef& ref) const;

    // Geometric equality: field, dim and classes; provenance order ignored.
    friend bool operator==(const ColoredConfig& a, const ColoredConfig& b);

private:
    ColoredConfig() = default;

    FieldTag field_ = FieldTag::Rational;
    std::size_t dim_ = 0;
    std::size_t total_ = 0;
    std::vector<std::vector<Point>> classes_;
    std::vector<std::size_t> original_order_;
    std::vector<std::size_t> class_offsets_;
};

// A maximal line of the configuration: every configuration point on the line
// is listed. `key` is identical for any two point pairs spanning the line.
struct LineRecord {
    std::string key;
    Point direction;  // primitive integer vector (rational) or leading-1 (gaussian)
    Point base;       // exact projection of any member along the direction
    std::vector<PointRef> members;  // >= 2, sorted by (color, index)
};

// Canonical key data for the line through two distinct points.
struct LineKey {
    std::string key;
    Point direction;
    Point base;
};
LineKey line_key(const ColoredConfig& config, const Point& p, const Point& q);

// Position of `point` on the line: point = base + s * direction.
// Throws if the point is not on the line.
Scalar line_parameter(const LineRecord& line, const Point& point);

// All maximal lines with >= 2 members, sorted by canonical key. Every
// unordered pair of points lies on exactly one record.
std::vector<LineRecord> enumerate_lines(const ColoredConfig& config);

// Cut of the color indices into P1 = V_1..V_x, P2 = V_{x+1}..V_y,
// P3 = V_{y+1}..V_n (1-based color talk; cuts satisfy 0 <= x < y <= n).
struct Partition {
    std::size_t x = 0;
    std::size_t y = 0;

    bool in_p1(std::size_t color) const { return color < x; }      // 0-based color
    bool in_p2(std::size_t color) const { return color >= x && color < y; }
    bool in_p3(std::size_t color) const { return color >= y; }
};

Partition restrict_partition(const ColoredConfig& config, std::size_t x, std::size_t y);

// Points of one part in flattened order.
std::vector<Point> part_points(const ColoredConfig& config, const Partition& part, int which);
std::size_t part_size(const ColoredConfig& config, const Partition& part, int which);

// --- configuration file I/O (UTF-8 JSON) ---
//
// { "field": "rational" | "gaussian", "dim": d,
//   "colors": [ [ [x1, ..., xd], ... ], ... ],
//   "permutation": [ ... ] }        (emitted on save, ignored on load)
//
// Coordinates are rational/gaussian strings or bare JSON integers.

ColoredConfig load_config(const std::string& bytes, const std::string& where = "");
ColoredConfig load_config_file(const std::string& path);
std::string serialize_config(const ColoredConfig& config);

}  // namespace mrlab

#endif
