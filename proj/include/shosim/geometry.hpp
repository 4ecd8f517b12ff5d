#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "shosim/random.hpp"

namespace shosim {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Station {
    std::size_t id = 0;
    Point position;
};

/// Base stations on a hexagonal lattice.
///
/// Cells are flat-topped hexagons of circumradius `cell_radius`: hexagon
/// vertices sit at angles 0, 60, ..., 300 degrees from each site and the six
/// first-ring neighbours at 30, 90, ..., 330 degrees, a distance
/// sqrt(3) * cell_radius away. Station 0 is at the origin; ids are dense and
/// grow ring by ring, counter-clockwise from the 30 degree neighbour.
struct CellLayout {
    std::vector<Station> stations;
    double cell_radius = 1.0;

    [[nodiscard]] std::size_t size() const noexcept { return stations.size(); }
};

using MobilePosition = Point;

inline CellLayout build_hex_layout(int rings, double cell_radius = 1.0)
{
    if (rings < 0) {
        throw std::invalid_argument("build_hex_layout: rings must be >= 0");
    }
    if (!(cell_radius > 0.0) || !std::isfinite(cell_radius)) {
        throw std::invalid_argument("build_hex_layout: cell_radius must be positive");
    }

    // Axial lattice basis: e1 at 30 degrees, e2 at 90 degrees.
    const double isd = std::numbers::sqrt3 * cell_radius;
    const Point e1{isd * std::numbers::sqrt3 / 2.0, isd / 2.0};
    const Point e2{0.0, isd};
    const auto to_point = [&](int q, int r) {
        return Point{q * e1.x + r * e2.x, q * e1.y + r * e2.y};
    };

    // Corner directions in counter-clockwise order starting at 30 degrees.
    constexpr std::array<std::array<int, 2>, 6> corners{
        {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

    CellLayout layout;
    layout.cell_radius = cell_radius;
    layout.stations.push_back({0, Point{0.0, 0.0}});
    for (int k = 1; k <= rings; ++k) {
        for (std::size_t side = 0; side < corners.size(); ++side) {
            const auto& from = corners[side];
            const auto& to = corners[(side + 1) % corners.size()];
            for (int j = 0; j < k; ++j) {
                const int q = k * from[0] + j * (to[0] - from[0]);
                const int r = k * from[1] + j * (to[1] - from[1]);
                layout.stations.push_back({layout.stations.size(), to_point(q, r)});
            }
        }
    }
    return layout;
}

inline double hex_area(double cell_radius)
{
    if (!(cell_radius > 0.0)) {
        throw std::invalid_argument("hex_area: cell_radius must be positive");
    }
    return 3.0 * std::numbers::sqrt3 * cell_radius * cell_radius / 2.0;
}

/// Membership in the flat-topped hexagon of circumradius `cell_radius`.
inline bool in_hex(const Point& p, const Point& center, double cell_radius) noexcept
{
    const double dx = std::abs(p.x - center.x);
    const double dy = std::abs(p.y - center.y);
    const double apothem = std::numbers::sqrt3 / 2.0 * cell_radius;
    return dy <= apothem && std::numbers::sqrt3 * dx + dy <= std::numbers::sqrt3 * cell_radius;
}

/// Uniform point in a hexagon via rejection from its bounding box.
inline MobilePosition sample_point_in_hex(RandomStream& rng, const Point& center, double cell_radius)
{
    if (!(cell_radius > 0.0)) {
        throw std::invalid_argument("sample_point_in_hex: cell_radius must be positive");
    }
    const double apothem = std::numbers::sqrt3 / 2.0 * cell_radius;
    std::uniform_real_distribution<double> ux(-cell_radius, cell_radius);
    std::uniform_real_distribution<double> uy(-apothem, apothem);
    for (;;) {
        const Point p{center.x + ux(rng), center.y + uy(rng)};
        if (in_hex(p, center, cell_radius)) {
            return p;
        }
    }
}

/// Point at `fraction` cell radii from station 0 along `direction` (radians,
/// counter-clockwise from +x).
inline MobilePosition point_at_relative_distance(double fraction, double direction,
                                                 const CellLayout& layout)
{
    if (!(fraction >= 0.0)) {
        throw std::invalid_argument("point_at_relative_distance: fraction must be >= 0");
    }
    if (layout.stations.empty()) {
        throw std::invalid_argument("point_at_relative_distance: empty layout");
    }
    const Point& origin = layout.stations.front().position;
    const double r = fraction * layout.cell_radius;
    return {origin.x + r * std::cos(direction), origin.y + r * std::sin(direction)};
}

namespace direction {
/// Toward the hexagon vertex shared by station 0 and stations 1 and 6.
inline constexpr double three_cell_corner = 0.0;
/// Toward first-ring neighbour station 1.
inline constexpr double first_neighbour = std::numbers::pi / 6.0;
} // namespace direction

} // namespace shosim
