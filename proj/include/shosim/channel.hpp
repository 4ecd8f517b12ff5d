#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "shosim/geometry.hpp"
#include "shosim/random.hpp"

namespace shosim {

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) noexcept { return 10.0 * std::log10(ratio); }

/// Scalar radio constants shared by every link-budget computation.
///
/// Powers are normalized so that p_total (the per-station total transmit
/// power, identical for every station) defaults to 1.
struct RadioParams {
    double chip_rate = 3.84e6;             // W, chips/s
    double bit_rate = 12200.0;             // R, bits/s (12.2 kbit/s AMR speech)
    double activity = 0.5;                 // v
    double orthogonality = 0.6;            // a, 1 = perfectly orthogonal
    double ebio_target = db_to_linear(5.0); // linear Eb/I0 target
    double path_loss_exp = 4.0;            // alpha
    double shadow_sigma_db = 8.0;          // sigma
    double p_total = 1.0;
    double gamma = 0.8;                    // dedicated-channel share of p_total

    /// ebio_target * v * R / W * p_total, the factor every power formula shares.
    [[nodiscard]] double power_scale() const noexcept
    {
        return ebio_target * activity * bit_rate / chip_rate * p_total;
    }

    void validate() const
    {
        const auto fail = [](const std::string& what) {
            throw std::invalid_argument("RadioParams: " + what);
        };
        if (!(chip_rate > 0.0) || !std::isfinite(chip_rate)) fail("chip_rate must be > 0");
        if (!(bit_rate > 0.0) || !std::isfinite(bit_rate)) fail("bit_rate must be > 0");
        if (!(activity >= 0.0 && activity <= 1.0)) fail("activity must lie in [0, 1]");
        if (!(orthogonality >= 0.0 && orthogonality <= 1.0)) fail("orthogonality must lie in [0, 1]");
        if (!(ebio_target > 0.0) || !std::isfinite(ebio_target)) fail("ebio_target must be > 0");
        if (!(path_loss_exp > 0.0) || !std::isfinite(path_loss_exp)) fail("path_loss_exp must be > 0");
        if (!(shadow_sigma_db >= 0.0) || !std::isfinite(shadow_sigma_db)) fail("shadow_sigma_db must be >= 0");
        if (!(p_total > 0.0) || !std::isfinite(p_total)) fail("p_total must be > 0");
        if (!(gamma > 0.0 && gamma <= 1.0)) fail("gamma must lie in (0, 1]");
    }
};

/// Linear attenuation L_i from every station to one mobile, indexed like
/// CellLayout::stations.
struct LinkGains {
    std::vector<double> gains;

    [[nodiscard]] std::size_t size() const noexcept { return gains.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return gains[i]; }
};

/// Zero-mean Gaussian shadowing in dB. One standard normal is consumed per
/// call regardless of sigma so streams stay aligned across sigma values.
inline double shadowing_sample(double sigma_db, RandomStream& rng)
{
    if (!(sigma_db >= 0.0)) {
        throw std::invalid_argument("shadowing_sample: sigma must be >= 0");
    }
    std::normal_distribution<double> standard(0.0, 1.0);
    return standard(rng) * sigma_db + 0.0;
}

/// Distance-power law with log-normal shadowing: r^-alpha * 10^(shadow/10).
inline double link_gain(double distance, double shadow_db, double alpha)
{
    if (!(distance > 0.0)) {
        throw std::invalid_argument("link_gain: distance must be > 0");
    }
    return std::pow(distance, -alpha) * db_to_linear(shadow_db);
}

/// Distances closer than this fraction of the cell radius are clamped.
inline constexpr double min_distance_fraction = 0.01;

inline LinkGains snapshot_gains(const CellLayout& layout, const MobilePosition& mobile,
                                const RadioParams& params, RandomStream& rng)
{
    const double floor = min_distance_fraction * layout.cell_radius;
    LinkGains out;
    out.gains.reserve(layout.size());
    for (const auto& station : layout.stations) {
        const double d = std::max(distance(station.position, mobile), floor);
        const double shadow = shadowing_sample(params.shadow_sigma_db, rng);
        out.gains.push_back(link_gain(d, shadow, params.path_loss_exp));
    }
    return out;
}

} // namespace shosim
