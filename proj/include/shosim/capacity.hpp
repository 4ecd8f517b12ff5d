#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shosim/channel.hpp"
#include "shosim/geometry.hpp"
#include "shosim/handover.hpp"
#include "shosim/montecarlo.hpp"
#include "shosim/power_control.hpp"

namespace shosim {

struct SnapshotResult {
    RegionLabel region = RegionLabel::NonSHO;
    double power = 0.0;
    std::size_t active_set_size = 1;
};

/// One handover/power-control configuration evaluated on a shared snapshot.
struct Arm {
    Scheme scheme = Scheme::Unbalanced;
    int max_size = 2;
    double cs_th_db = 0.0;
};

/// Dedicated power the active set spends on one mobile.
inline SnapshotResult evaluate_snapshot(const LinkGains& gains, const Arm& arm, const RadioParams& params)
{
    const ActiveSet set = select_active_set(gains, arm.cs_th_db, arm.max_size);
    SnapshotResult r;
    r.region = classify_region(set);
    r.active_set_size = set.size();
    r.power = set.size() == 1 ? dedicated_power_out(gains, set.members.front(), params)
                              : dedicated_power_in(arm.scheme, set.members, gains, params);
    return r;
}

/// Monte-Carlo moments of per-user dedicated power for several arms over
/// the same snapshots (common random numbers). Each snapshot places one
/// mobile uniformly in cell 0 and draws fresh shadowing to every station.
///
/// Value k is the power under arms[k]; tally k is its active-set size.
class PairedSweep {
public:
    PairedSweep(SampleMoments moments, std::vector<Arm> arms, RadioParams params)
        : moments_(std::move(moments)), arms_(std::move(arms)), params_(params)
    {}

    [[nodiscard]] std::size_t samples() const noexcept { return moments_.count; }
    [[nodiscard]] const std::vector<Arm>& arms() const noexcept { return arms_; }
    [[nodiscard]] const SampleMoments& moments() const noexcept { return moments_; }

    [[nodiscard]] double mean_power(std::size_t k) const { return moments_.mean(k); }
    [[nodiscard]] double power_std_error(std::size_t k) const { return moments_.std_error(k); }
    [[nodiscard]] double overhead(std::size_t k) const { return moments_.tally_mean(k) - 1.0; }

    [[nodiscard]] double capacity(std::size_t k) const;

    /// Capacity of arm k relative to arm `baseline`.
    [[nodiscard]] double gain(std::size_t k, std::size_t baseline) const
    {
        return capacity(k) / capacity(baseline);
    }

    /// Delta-method standard error of gain(k, baseline).
    [[nodiscard]] double gain_std_error(std::size_t k, std::size_t baseline) const
    {
        if (k == baseline) return 0.0;
        std::vector<double> coef(arms_.size(), 0.0);
        const double mk = mean_power(k);
        const double g = mean_power(baseline) / mk;
        coef[baseline] += 1.0 / mk;
        coef[k] -= g / mk;
        return moments_.combination_std_error(coef);
    }

    /// Standard error of sum_i weight_i * gain(arm_i, baseline), using the
    /// pairing of every arm on the same snapshots.
    [[nodiscard]] double gain_combination_std_error(std::span<const std::pair<std::size_t, double>> terms,
                                                    std::size_t baseline) const
    {
        std::vector<double> coef(arms_.size(), 0.0);
        const double m0 = mean_power(baseline);
        for (const auto& [k, w] : terms) {
            const double mk = mean_power(k);
            coef[baseline] += w / mk;
            coef[k] -= w * (m0 / mk) / mk;
        }
        return moments_.combination_std_error(coef);
    }

    /// Standard error of gain(k, baseline) - gain(l, baseline).
    [[nodiscard]] double gain_difference_std_error(std::size_t k, std::size_t l, std::size_t baseline) const
    {
        const std::pair<std::size_t, double> terms[] = {{k, 1.0}, {l, -1.0}};
        return gain_combination_std_error(terms, baseline);
    }

private:
    SampleMoments moments_;
    std::vector<Arm> arms_;
    RadioParams params_;
};

/// Users per cell from the dedicated-power balance gamma * P_T = N * E[P_user].
/// Returned as a real number.
inline double solve_capacity(double mean_user_power, const RadioParams& params)
{
    if (!(mean_user_power > 0.0)) {
        throw std::invalid_argument("solve_capacity: mean user power must be > 0");
    }
    if (!(params.gamma > 0.0 && params.gamma <= 1.0)) {
        throw std::invalid_argument("solve_capacity: gamma must lie in (0, 1]");
    }
    return params.gamma * params.p_total / mean_user_power;
}

inline double PairedSweep::capacity(std::size_t k) const { return solve_capacity(mean_power(k), params_); }

inline PairedSweep run_paired_sweep(const CellLayout& layout, const RadioParams& params,
                                    std::vector<Arm> arms, std::size_t n_samples, std::uint64_t seed,
                                    unsigned threads = 1)
{
    params.validate();
    if (arms.empty()) {
        throw std::invalid_argument("run_paired_sweep: no arms");
    }
    if (layout.size() == 0) {
        throw std::invalid_argument("run_paired_sweep: empty layout");
    }
    const Point center = layout.stations.front().position;
    const auto sample = [&](RandomStream& rng, std::span<double> power, std::span<double> links) {
        const MobilePosition mobile = sample_point_in_hex(rng, center, layout.cell_radius);
        const LinkGains gains = snapshot_gains(layout, mobile, params, rng);
        for (std::size_t k = 0; k < arms.size(); ++k) {
            const SnapshotResult r = evaluate_snapshot(gains, arms[k], params);
            power[k] = r.power;
            links[k] = static_cast<double>(r.active_set_size);
        }
    };
    SampleMoments m = run_blocks(seed, n_samples, arms.size(), arms.size(), threads, sample);
    return PairedSweep(std::move(m), std::move(arms), params);
}

struct UserPowerEstimate {
    double mean = 0.0;
    double overhead = 0.0;
    double std_error = 0.0;
};

inline UserPowerEstimate mean_user_power(const CellLayout& layout, const RadioParams& params, Scheme scheme,
                                         int max_size, double cs_th_db, std::size_t n_samples,
                                         std::uint64_t seed, unsigned threads = 1)
{
    if (n_samples < 1) {
        throw std::invalid_argument("mean_user_power: n_samples must be >= 1");
    }
    const PairedSweep sweep =
        run_paired_sweep(layout, params, {Arm{scheme, max_size, cs_th_db}}, n_samples, seed, threads);
    return {sweep.mean_power(0), sweep.overhead(0), sweep.power_std_error(0)};
}

struct CapacityPoint {
    double cs_th_db = 0.0;
    double overhead = 0.0;
    double mean_power = 0.0;
    double power_std_error = 0.0;
    double capacity = 0.0;
    double gain = 1.0;
    double gain_std_error = 0.0;
};

/// Capacity gain versus soft-handover overhead for one scheme and active-set
/// size. The baseline is hard handover (cs_th = 0), evaluated on the same
/// snapshots as every other point.
struct CapacityCurve {
    Scheme scheme = Scheme::Unbalanced;
    int max_size = 2;
    double shadow_sigma_db = 0.0;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<CapacityPoint> points;
};

/// Builds a curve from arms [first, first + cs_th.size()) of a sweep whose
/// arm `baseline` is the hard-handover reference.
inline CapacityCurve curve_from_sweep(const PairedSweep& sweep, std::size_t baseline, std::size_t first,
                                      std::size_t count, const RadioParams& params, std::uint64_t seed)
{
    CapacityCurve curve;
    curve.scheme = sweep.arms().at(first).scheme;
    curve.max_size = sweep.arms().at(first).max_size;
    curve.shadow_sigma_db = params.shadow_sigma_db;
    curve.seed = seed;
    curve.samples = sweep.samples();
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = first + i;
        CapacityPoint p;
        p.cs_th_db = sweep.arms()[k].cs_th_db;
        p.overhead = sweep.overhead(k);
        p.mean_power = sweep.mean_power(k);
        p.power_std_error = sweep.power_std_error(k);
        p.capacity = sweep.capacity(k);
        p.gain = sweep.gain(k, baseline);
        p.gain_std_error = sweep.gain_std_error(k, baseline);
        curve.points.push_back(p);
    }
    std::stable_sort(curve.points.begin(), curve.points.end(),
                     [](const CapacityPoint& l, const CapacityPoint& r) { return l.overhead < r.overhead; });
    return curve;
}

inline CapacityCurve gain_curve(const CellLayout& layout, const RadioParams& params, Scheme scheme, int max_size,
                                std::span<const double> cs_th_values, std::size_t n_samples, std::uint64_t seed,
                                unsigned threads = 1)
{
    if (cs_th_values.empty()) {
        throw std::invalid_argument("gain_curve: cs_th_values is empty");
    }
    std::vector<Arm> arms{Arm{scheme, max_size, 0.0}};
    for (double cs : cs_th_values) {
        if (!(cs >= 0.0)) {
            throw std::invalid_argument("gain_curve: cs_th values must be >= 0");
        }
        arms.push_back(Arm{scheme, max_size, cs});
    }
    const PairedSweep sweep = run_paired_sweep(layout, params, std::move(arms), n_samples, seed, threads);
    return curve_from_sweep(sweep, 0, 1, cs_th_values.size(), params, seed);
}

} // namespace shosim
