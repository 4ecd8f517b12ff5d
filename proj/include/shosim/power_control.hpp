#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shosim/channel.hpp"

namespace shosim {

using StationId = std::size_t;

/// How the active-set stations split the dedicated power of one mobile.
enum class Scheme {
    Balanced,   // equal power from every serving station
    Unbalanced, // power proportional to each serving link gain
};

inline std::string_view to_string(Scheme s) noexcept
{
    return s == Scheme::Balanced ? "balanced" : "unbalanced";
}

inline std::optional<Scheme> parse_scheme(std::string_view text) noexcept
{
    if (text == "balanced") return Scheme::Balanced;
    if (text == "unbalanced") return Scheme::Unbalanced;
    return std::nullopt;
}

struct PowerAllocation {
    std::vector<StationId> serving_ids;
    std::vector<double> powers;
    double total = 0.0;
    Scheme scheme = Scheme::Balanced;
};

namespace detail {

inline void check_gains(const LinkGains& gains, std::string_view who)
{
    for (double g : gains.gains) {
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw std::invalid_argument(std::string(who) + ": link gains must be finite and > 0");
        }
    }
}

inline void check_index(const LinkGains& gains, StationId id, std::string_view who)
{
    if (id >= gains.size()) {
        throw std::out_of_range(std::string(who) + ": station id " + std::to_string(id) +
                                " outside layout of " + std::to_string(gains.size()));
    }
}

} // namespace detail

/// 1 - a + sum over every other station j of L_j / L_serving.
inline double interference_factor(const LinkGains& gains, StationId serving, double orthogonality)
{
    detail::check_index(gains, serving, "interference_factor");
    const double own = gains[serving];
    if (!(own > 0.0)) {
        throw std::invalid_argument("interference_factor: serving gain must be > 0");
    }
    double ratio_sum = 0.0;
    for (StationId j = 0; j < gains.size(); ++j) {
        if (j != serving) {
            ratio_sum += gains[j] / own;
        }
    }
    return 1.0 - orthogonality + ratio_sum;
}

namespace detail {

inline double checked_factor(const LinkGains& gains, StationId id, double orthogonality,
                             std::string_view who)
{
    const double d = interference_factor(gains, id, orthogonality);
    if (!(d > 0.0)) {
        throw std::domain_error(std::string(who) +
                                ": interference factor vanishes (a = 1 with no interferers)");
    }
    return d;
}

} // namespace detail

/// Splits the dedicated power of one mobile over its active set so that the
/// maximal-ratio combined Eb/I0 meets the target under the near-boundary
/// approximation (own-channel power ignored in the interference term).
///
/// With per-link weights w_i summing to one, the total P_t solves
///   P_t * sum_i w_i / D_i = target * v R / W * p_total
/// and each link gets w_i * P_t. Balanced uses w_i = 1/n; Unbalanced uses
/// w_i = L_i / sum_k L_k over the active set, so every pairwise power ratio
/// equals the corresponding attenuation ratio.
inline PowerAllocation allocate(Scheme scheme, std::span<const StationId> active_set,
                                const LinkGains& gains, const RadioParams& params)
{
    if (active_set.empty()) {
        throw std::invalid_argument("allocate: active set is empty");
    }
    detail::check_gains(gains, "allocate");
    for (StationId id : active_set) {
        detail::check_index(gains, id, "allocate");
    }

    const std::size_t n = active_set.size();
    const double scale = params.power_scale();

    PowerAllocation out;
    out.scheme = scheme;
    out.serving_ids.assign(active_set.begin(), active_set.end());

    if (n == 1) {
        const double d = detail::checked_factor(gains, active_set[0], params.orthogonality, "allocate");
        out.total = scale * d;
        out.powers = {out.total};
        return out;
    }

    std::vector<double> weights(n);
    if (scheme == Scheme::Balanced) {
        for (auto& w : weights) w = 1.0 / static_cast<double>(n);
    } else {
        double set_gain = 0.0;
        for (StationId id : active_set) set_gain += gains[id];
        for (std::size_t i = 0; i < n; ++i) weights[i] = gains[active_set[i]] / set_gain;
    }

    double combining = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        combining += weights[i] / detail::checked_factor(gains, active_set[i], params.orthogonality, "allocate");
    }

    out.total = scale / combining;
    out.powers.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.powers[i] = weights[i] * out.total;
    return out;
}

inline PowerAllocation allocate(Scheme scheme, std::initializer_list<StationId> active_set,
                                const LinkGains& gains, const RadioParams& params)
{
    return allocate(scheme, std::span<const StationId>(active_set.begin(), active_set.size()), gains, params);
}

namespace detail {

inline void check_allocation(const PowerAllocation& alloc, const LinkGains& gains,
                             const RadioParams& params, std::string_view who)
{
    if (alloc.serving_ids.size() != alloc.powers.size()) {
        throw std::invalid_argument(std::string(who) + ": serving ids and powers differ in length");
    }
    for (StationId id : alloc.serving_ids) check_index(gains, id, who);
    check_gains(gains, who);
    if (!(params.activity > 0.0)) {
        throw std::domain_error(std::string(who) + ": activity factor must be > 0");
    }
}

} // namespace detail

/// Combined Eb/I0 with the full per-branch interference term,
///   W/(vR) * P_si / [(P_total - P_si)(1 - a) + sum_{j != i} P_total L_j / L_i],
/// summed over the serving branches.
inline double exact_ebio(const PowerAllocation& alloc, const LinkGains& gains, const RadioParams& params)
{
    detail::check_allocation(alloc, gains, params, "exact_ebio");
    const double spreading = params.chip_rate / (params.activity * params.bit_rate);
    const double a = params.orthogonality;
    double ebio = 0.0;
    for (std::size_t k = 0; k < alloc.serving_ids.size(); ++k) {
        const StationId i = alloc.serving_ids[k];
        const double ps = alloc.powers[k];
        double other = 0.0;
        for (StationId j = 0; j < gains.size(); ++j) {
            if (j != i) other += params.p_total * gains[j] / gains[i];
        }
        const double interference = (params.p_total - ps) * (1.0 - a) + other;
        if (!(interference > 0.0)) {
            throw std::domain_error("exact_ebio: non-positive interference on branch " + std::to_string(i));
        }
        ebio += spreading * ps / interference;
    }
    return ebio;
}

/// Combined Eb/I0 with own-channel power dropped from the interference:
/// W / (vR p_total) * sum_i P_si / D_i.
inline double approx_ebio(const PowerAllocation& alloc, const LinkGains& gains, const RadioParams& params)
{
    detail::check_allocation(alloc, gains, params, "approx_ebio");
    double sum = 0.0;
    for (std::size_t k = 0; k < alloc.serving_ids.size(); ++k) {
        sum += alloc.powers[k] /
               detail::checked_factor(gains, alloc.serving_ids[k], params.orthogonality, "approx_ebio");
    }
    return params.chip_rate / (params.activity * params.bit_rate * params.p_total) * sum;
}

/// Dedicated power for a mobile served by a single station.
inline double dedicated_power_out(const LinkGains& gains, StationId serving, const RadioParams& params)
{
    const double d = interference_factor(gains, serving, params.orthogonality);
    return params.power_scale() * d;
}

/// Total dedicated power for a mobile in soft handover (two or more links).
inline double dedicated_power_in(Scheme scheme, std::span<const StationId> active_set,
                                 const LinkGains& gains, const RadioParams& params)
{
    if (active_set.size() < 2) {
        throw std::invalid_argument("dedicated_power_in: soft handover needs at least two links");
    }
    return allocate(scheme, active_set, gains, params).total;
}

inline double dedicated_power_in(Scheme scheme, std::initializer_list<StationId> active_set,
                                 const LinkGains& gains, const RadioParams& params)
{
    return dedicated_power_in(scheme, std::span<const StationId>(active_set.begin(), active_set.size()),
                              gains, params);
}

} // namespace shosim
