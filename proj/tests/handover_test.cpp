#include <vector>

#include <gtest/gtest.h>

#include "shosim/handover.hpp"

using namespace shosim;

namespace {

LinkGains from_db(std::initializer_list<double> db)
{
    LinkGains g;
    for (double x : db) g.gains.push_back(db_to_linear(x));
    return g;
}

} // namespace

TEST(Handover, WindowSelection)
{
    EXPECT_EQ(select_active_set(from_db({-80, -84, -90}), 5.0, 3).members, (std::vector<StationId>{0, 1}));
    EXPECT_EQ(select_active_set(from_db({-80, -84, -83}), 5.0, 2).members, (std::vector<StationId>{0, 2}));
    EXPECT_EQ(select_active_set(from_db({-80, -84, -83}), 5.0, 3).members, (std::vector<StationId>{0, 2, 1}));
    EXPECT_EQ(select_active_set(from_db({-80, -80.5, -81}), 0.0, 3).members, (std::vector<StationId>{0}));
}

TEST(Handover, StrongestFirstAndTies)
{
    EXPECT_EQ(select_active_set(from_db({-90, -70, -75}), 25.0, 3).members, (std::vector<StationId>{1, 2, 0}));
    EXPECT_EQ(select_active_set(from_db({-90, -70, -75}), 10.0, 3).members, (std::vector<StationId>{1, 2}));
    // Equal gains order by id.
    const LinkGains tie{{0.5, 0.5, 0.5}};
    EXPECT_EQ(select_active_set(tie, 1.0, 2).members, (std::vector<StationId>{0, 1}));
    EXPECT_EQ(select_active_set(tie, 0.0, 2).members, (std::vector<StationId>{0}));
}

TEST(Handover, Errors)
{
    EXPECT_THROW(select_active_set(from_db({-80}), 5.0, 4), std::invalid_argument);
    EXPECT_THROW(select_active_set(from_db({-80}), -1.0, 2), std::invalid_argument);
    EXPECT_THROW(select_active_set(LinkGains{}, 1.0, 2), std::invalid_argument);
}

TEST(Handover, SingleStationLayout)
{
    EXPECT_EQ(select_active_set(from_db({-60}), 10.0, 3).members, (std::vector<StationId>{0}));
}

TEST(Handover, RegionLabels)
{
    EXPECT_EQ(classify_region(ActiveSet{{4}, 2}), RegionLabel::NonSHO);
    EXPECT_EQ(classify_region(ActiveSet{{4, 1}, 2}), RegionLabel::SHO2);
    EXPECT_EQ(classify_region(ActiveSet{{4, 1, 0}, 3}), RegionLabel::SHO3);
    EXPECT_THROW(classify_region(ActiveSet{{}, 2}), std::invalid_argument);
}

TEST(Handover, Overhead)
{
    const std::vector<ActiveSet> singles(10, ActiveSet{{0}, 2});
    const std::vector<ActiveSet> pairs(10, ActiveSet{{0, 1}, 2});
    std::vector<ActiveSet> mixed(singles.begin(), singles.begin() + 5);
    mixed.insert(mixed.end(), pairs.begin(), pairs.begin() + 5);
    EXPECT_EQ(sho_overhead(singles), 0.0);
    EXPECT_EQ(sho_overhead(pairs), 1.0);
    EXPECT_EQ(sho_overhead(mixed), 0.5);
    EXPECT_THROW(sho_overhead(std::vector<ActiveSet>{}), std::invalid_argument);
}

TEST(Handover, MidpointIsSoftHandoverWithoutShadowing)
{
    const CellLayout layout = build_hex_layout(2, 1.0);
    RadioParams p;
    p.shadow_sigma_db = 0.0;
    RandomStream rng = make_substream(1, 0);
    for (StationId k = 1; k <= 6; ++k) {
        const Point& s = layout.stations[k].position;
        const LinkGains g = snapshot_gains(layout, {s.x / 2.0, s.y / 2.0}, p, rng);
        for (double cs : {1e-6, 0.5, 3.0}) {
            EXPECT_GE(select_active_set(g, cs, 2).size(), 2u) << k << " " << cs;
        }
    }
}

TEST(Handover, WindowMonotoneAndSizeCapped)
{
    const CellLayout layout = build_hex_layout(2, 1.0);
    const RadioParams p;
    RandomStream rng = make_substream(2, 0);
    constexpr int n = 10000;
    const std::vector<double> windows{0.0, 1.0, 2.0, 3.0, 5.0, 8.0};
    std::vector<std::vector<ActiveSet>> sets(windows.size());
    for (int i = 0; i < n; ++i) {
        const Point m = sample_point_in_hex(rng, {}, 1.0);
        const LinkGains g = snapshot_gains(layout, m, p, rng);
        std::size_t previous = 0;
        for (std::size_t w = 0; w < windows.size(); ++w) {
            const ActiveSet s = select_active_set(g, windows[w], 3);
            ASSERT_LE(s.size(), 3u);
            ASSERT_GE(s.size(), previous);
            previous = s.size();
            for (StationId id : s.members) {
                ASSERT_LT(linear_to_db(g[s.members[0]]) - linear_to_db(g[id]), windows[w] + 1e-12);
                ASSERT_LE(g[id], g[s.members[0]]);
            }
            sets[w].push_back(s);
        }
    }
    for (std::size_t w = 1; w < windows.size(); ++w) {
        EXPECT_GE(sho_overhead(sets[w]), sho_overhead(sets[w - 1]));
    }
    EXPECT_EQ(sho_overhead(sets[0]), 0.0);
}
