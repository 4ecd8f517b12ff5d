#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "shosim/geometry.hpp"

using namespace shosim;

namespace {

// Hex (ring) index of an axial lattice point recovered from its position.
int ring_of(const Point& p, double radius)
{
    const double isd = std::numbers::sqrt3 * radius;
    // Inverse of q * (1.5, sqrt3/2) R + r * (0, sqrt3) R.
    const double q = p.x / (1.5 * radius);
    const double r = (p.y - q * isd / 2.0) / isd;
    const long qi = std::lround(q);
    const long ri = std::lround(r);
    return static_cast<int>(std::max({std::labs(qi), std::labs(ri), std::labs(qi + ri)}));
}

} // namespace

TEST(Geometry, StationCounts)
{
    EXPECT_EQ(build_hex_layout(0, 1.0).size(), 1u);
    EXPECT_EQ(build_hex_layout(1, 1.0).size(), 7u);
    EXPECT_EQ(build_hex_layout(2, 1.0).size(), 19u);
    EXPECT_EQ(build_hex_layout(3, 1.0).size(), 37u);
    EXPECT_THROW(build_hex_layout(-1, 1.0), std::invalid_argument);
}

TEST(Geometry, LayoutInvariants)
{
    for (double radius : {1.0, 2.5}) {
        const CellLayout layout = build_hex_layout(3, radius);
        EXPECT_EQ(layout.stations.front().position, (Point{0.0, 0.0}));
        for (std::size_t i = 0; i < layout.size(); ++i) {
            EXPECT_EQ(layout.stations[i].id, i);
            for (std::size_t j = i + 1; j < layout.size(); ++j) {
                EXPECT_GE(distance(layout.stations[i].position, layout.stations[j].position),
                          std::numbers::sqrt3 * radius - 1e-9);
            }
        }
    }
}

TEST(Geometry, RingDistancesMatchLattice)
{
    // Ring 1: six sites at sqrt(3) R. Ring 2: six at 3 R (along the corner
    // directions) and six at 2 sqrt(3) R.
    const CellLayout layout = build_hex_layout(2, 1.0);
    std::map<int, std::vector<double>> by_ring;
    for (const auto& s : layout.stations) {
        by_ring[ring_of(s.position, 1.0)].push_back(distance(s.position, {}));
    }
    ASSERT_EQ(by_ring[1].size(), 6u);
    ASSERT_EQ(by_ring[2].size(), 12u);
    for (double d : by_ring[1]) EXPECT_NEAR(d, std::numbers::sqrt3, 1e-12);
    int three = 0;
    int two_sqrt3 = 0;
    for (double d : by_ring[2]) {
        if (std::abs(d - 3.0) < 1e-12) ++three;
        if (std::abs(d - 2.0 * std::numbers::sqrt3) < 1e-12) ++two_sqrt3;
    }
    EXPECT_EQ(three, 6);
    EXPECT_EQ(two_sqrt3, 6);
}

TEST(Geometry, FirstRingOrientation)
{
    const CellLayout layout = build_hex_layout(1, 1.0);
    for (std::size_t k = 1; k <= 6; ++k) {
        const Point& p = layout.stations[k].position;
        const double angle = std::atan2(p.y, p.x);
        const double expected = std::remainder(std::numbers::pi / 6.0 + (k - 1) * std::numbers::pi / 3.0,
                                               2.0 * std::numbers::pi);
        EXPECT_NEAR(std::remainder(angle - expected, 2.0 * std::numbers::pi), 0.0, 1e-12) << k;
    }
}

TEST(Geometry, HexArea)
{
    EXPECT_NEAR(hex_area(1.0), 2.598076211353316, 1e-12);
    EXPECT_NEAR(hex_area(2.0), 10.392304845413264, 1e-12);
    EXPECT_THROW(hex_area(0.0), std::invalid_argument);
    EXPECT_THROW(hex_area(-1.0), std::invalid_argument);
}

TEST(Geometry, HexMembership)
{
    EXPECT_TRUE(in_hex({0.0, 0.0}, {}, 1.0));
    EXPECT_TRUE(in_hex({1.0, 0.0}, {}, 1.0));                         // vertex
    EXPECT_TRUE(in_hex({0.0, std::numbers::sqrt3 / 2.0}, {}, 1.0));   // edge midpoint
    EXPECT_FALSE(in_hex({0.0, std::numbers::sqrt3 / 2.0 + 1e-6}, {}, 1.0));
    EXPECT_FALSE(in_hex({1.0 + 1e-6, 0.0}, {}, 1.0));
    EXPECT_FALSE(in_hex({0.9, 0.3}, {}, 1.0)); // beyond the slanted edge
}

TEST(Geometry, SamplesStayInsideAndAreCentred)
{
    RandomStream rng = make_substream(7, 0);
    const Point center{2.0, -1.0};
    constexpr int n = 100000;
    double sx = 0.0;
    double sy = 0.0;
    for (int i = 0; i < n; ++i) {
        const Point p = sample_point_in_hex(rng, center, 1.0);
        ASSERT_TRUE(in_hex(p, center, 1.0));
        sx += p.x;
        sy += p.y;
    }
    EXPECT_NEAR(sx / n, center.x, 0.01);
    EXPECT_NEAR(sy / n, center.y, 0.01);
}

TEST(Geometry, SectorUniformityChiSquared)
{
    // Six 60-degree sectors of a regular hexagon have equal area.
    RandomStream rng = make_substream(11, 0);
    constexpr int n = 100000;
    std::vector<int> counts(6, 0);
    for (int i = 0; i < n; ++i) {
        const Point p = sample_point_in_hex(rng, {}, 1.0);
        double angle = std::atan2(p.y, p.x);
        if (angle < 0) angle += 2.0 * std::numbers::pi;
        counts[std::min(5, static_cast<int>(angle / (std::numbers::pi / 3.0)))]++;
    }
    double chi2 = 0.0;
    const double expected = n / 6.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // chi-squared, 5 degrees of freedom, upper 0.001 quantile.
    EXPECT_LT(chi2, 20.515);
}

TEST(Geometry, SamplingIsDeterministic)
{
    RandomStream a = make_substream(123, 4);
    RandomStream b = make_substream(123, 4);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(sample_point_in_hex(a, {}, 1.0), sample_point_in_hex(b, {}, 1.0));
    }
}

TEST(Geometry, RelativePlacement)
{
    const CellLayout layout = build_hex_layout(2, 1.0);
    EXPECT_EQ(point_at_relative_distance(0.0, 1.0, layout), (Point{0.0, 0.0}));

    const Point p = point_at_relative_distance(0.6, direction::first_neighbour, layout);
    EXPECT_NEAR(distance(p, layout.stations[0].position), 0.6, 1e-12);
    EXPECT_NEAR(distance(p, layout.stations[1].position), std::numbers::sqrt3 - 0.6, 1e-12);

    // r/R = 1 toward the corner lands on the vertex shared by stations 0, 1, 6.
    const Point corner = point_at_relative_distance(1.0, direction::three_cell_corner, layout);
    EXPECT_NEAR(distance(corner, layout.stations[0].position), 1.0, 1e-12);
    EXPECT_NEAR(distance(corner, layout.stations[1].position), 1.0, 1e-12);
    EXPECT_NEAR(distance(corner, layout.stations[6].position), 1.0, 1e-12);

    EXPECT_THROW(point_at_relative_distance(-0.1, 0.0, layout), std::invalid_argument);
}
