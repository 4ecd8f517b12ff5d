#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "shosim/capacity.hpp"

using namespace shosim;

TEST(Capacity, SolveCapacity)
{
    RadioParams p;
    p.gamma = 0.8;
    EXPECT_DOUBLE_EQ(solve_capacity(0.01, p), 80.0);
    EXPECT_DOUBLE_EQ(solve_capacity(0.02, p), 40.0);
    p.gamma = 1.0;
    EXPECT_DOUBLE_EQ(solve_capacity(p.p_total, p), 1.0);
    EXPECT_THROW(solve_capacity(0.0, p), std::invalid_argument);
    EXPECT_THROW(solve_capacity(-1.0, p), std::invalid_argument);
}

TEST(Capacity, SnapshotEvaluation)
{
    const RadioParams p;
    const LinkGains g{{1.0, 0.9, 0.01}};
    const SnapshotResult hard = evaluate_snapshot(g, Arm{Scheme::Balanced, 2, 0.0}, p);
    EXPECT_EQ(hard.region, RegionLabel::NonSHO);
    EXPECT_EQ(hard.active_set_size, 1u);
    EXPECT_EQ(hard.power, dedicated_power_out(g, 0, p));
    const SnapshotResult soft = evaluate_snapshot(g, Arm{Scheme::Balanced, 2, 3.0}, p);
    EXPECT_EQ(soft.region, RegionLabel::SHO2);
    EXPECT_EQ(soft.power, dedicated_power_in(Scheme::Balanced, {0, 1}, g, p));
}

TEST(Capacity, HardHandoverMeanMatchesBruteForce)
{
    const CellLayout layout = build_hex_layout(2, 1.0);
    const RadioParams p;
    constexpr std::size_t n = 5000;
    const UserPowerEstimate est = mean_user_power(layout, p, Scheme::Unbalanced, 2, 0.0, n, 99);
    EXPECT_EQ(est.overhead, 0.0);

    // Replay: best server by gain, out-of-handover power.
    double sum = 0.0;
    for (std::size_t b = 0; b * samples_per_block < n; ++b) {
        RandomStream rng = make_substream(99, b);
        for (std::size_t s = b * samples_per_block; s < std::min(n, (b + 1) * samples_per_block); ++s) {
            const Point m = sample_point_in_hex(rng, {}, 1.0);
            const LinkGains g = snapshot_gains(layout, m, p, rng);
            const auto best = static_cast<StationId>(std::max_element(g.gains.begin(), g.gains.end()) - g.gains.begin());
            sum += dedicated_power_out(g, best, p);
        }
    }
    EXPECT_NEAR(est.mean, sum / n, 1e-12 * est.mean);
    EXPECT_GT(est.std_error, 0.0);
}

TEST(Capacity, DisjointSeedsAgreeWithoutShadowing)
{
    const CellLayout layout = build_hex_layout(2, 1.0);
    RadioParams p;
    p.shadow_sigma_db = 0.0;
    const auto a = mean_user_power(layout, p, Scheme::Balanced, 2, 3.0, 50000, 1);
    const auto b = mean_user_power(layout, p, Scheme::Balanced, 2, 3.0, 50000, 2);
    EXPECT_LT(std::abs(a.mean - b.mean), 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST(Capacity, UnbalancedMeanNotAboveBalanced)
{
    const CellLayout layout = build_hex_layout(2, 1.0);
    const RadioParams p;
    for (int size : {2, 3}) {
        const auto bal = mean_user_power(layout, p, Scheme::Balanced, size, 5.0, 20000, 5);
        const auto unb = mean_user_power(layout, p, Scheme::Unbalanced, size, 5.0, 20000, 5);
        EXPECT_LE(unb.mean, bal.mean);
        EXPECT_EQ(unb.overhead, bal.overhead);
    }
}

TEST(Capacity, GainCurveProperties)
{
    const CellLayout layout = build_hex_layout(2, 1.0);
    const RadioParams p;
    const std::vector<double> windows{0.0, 1.0, 2.0, 4.0, 6.0};
    const CapacityCurve bal = gain_curve(layout, p, Scheme::Balanced, 3, windows, 20000, 8);
    const CapacityCurve unb = gain_curve(layout, p, Scheme::Unbalanced, 3, windows, 20000, 8);
    ASSERT_EQ(bal.points.size(), windows.size());
    EXPECT_EQ(bal.points.front().gain, 1.0);
    EXPECT_EQ(unb.points.front().gain, 1.0);
    EXPECT_EQ(bal.samples, 20000u);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        EXPECT_GE(unb.points[i].gain, bal.points[i].gain);
        EXPECT_GE(bal.points[i].overhead, 0.0);
        EXPECT_LE(bal.points[i].overhead, 2.0);
        EXPECT_GT(bal.points[i].capacity, 0.0);
        EXPECT_DOUBLE_EQ(bal.points[i].gain, bal.points[i].capacity / bal.points[0].capacity);
        if (i > 0) {
            EXPECT_GE(bal.points[i].overhead, bal.points[i - 1].overhead);
        }
    }
    EXPECT_THROW(gain_curve(layout, p, Scheme::Balanced, 2, std::vector<double>{}, 10, 1), std::invalid_argument);
    EXPECT_THROW(gain_curve(layout, p, Scheme::Balanced, 2, std::vector<double>{-1.0}, 10, 1),
                 std::invalid_argument);
}

TEST(Capacity, GainIndependentOfGamma)
{
    const CellLayout layout = build_hex_layout(2, 1.0);
    RadioParams p;
    p.gamma = 0.4;
    RadioParams doubled = p;
    doubled.gamma = 0.8;
    const std::vector<double> windows{0.0, 2.0, 5.0};
    const auto a = gain_curve(layout, p, Scheme::Unbalanced, 2, windows, 5000, 3);
    const auto b = gain_curve(layout, doubled, Scheme::Unbalanced, 2, windows, 5000, 3);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        EXPECT_EQ(a.points[i].gain, b.points[i].gain);
        EXPECT_EQ(2.0 * a.points[i].capacity, b.points[i].capacity);
    }
}

TEST(Capacity, ThreadCountDoesNotChangeResults)
{
    const CellLayout layout = build_hex_layout(2, 1.0);
    const RadioParams p;
    const std::vector<double> windows{0.0, 3.0};
    const auto one = gain_curve(layout, p, Scheme::Balanced, 3, windows, 9000, 4, 1);
    const auto four = gain_curve(layout, p, Scheme::Balanced, 3, windows, 9000, 4, 4);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        EXPECT_EQ(one.points[i].mean_power, four.points[i].mean_power);
        EXPECT_EQ(one.points[i].gain_std_error, four.points[i].gain_std_error);
    }
}

TEST(Capacity, RejectsZeroSamples)
{
    const CellLayout layout = build_hex_layout(1, 1.0);
    EXPECT_THROW(mean_user_power(layout, RadioParams{}, Scheme::Balanced, 2, 1.0, 0, 1), std::invalid_argument);
}
