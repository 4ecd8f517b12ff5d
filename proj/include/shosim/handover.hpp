#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "shosim/channel.hpp"
#include "shosim/power_control.hpp"

namespace shosim {

/// Stations serving one mobile, strongest pilot first.
struct ActiveSet {
    std::vector<StationId> members;
    int max_size = 2;

    [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
};

enum class RegionLabel { NonSHO, SHO2, SHO3 };

inline std::string_view to_string(RegionLabel r) noexcept
{
    switch (r) {
    case RegionLabel::NonSHO: return "non-sho";
    case RegionLabel::SHO2: return "sho2";
    case RegionLabel::SHO3: return "sho3";
    }
    return "?";
}

/// Static cell selection. Every station's pilot is proportional to its link
/// gain (all stations spend the same pilot power), so a station joins when its
/// gain is strictly less than `cs_th_db` below the best one. The set is then
/// cut to the `max_size` strongest. Equal gains order by lower station id.
inline ActiveSet select_active_set(const LinkGains& gains, double cs_th_db, int max_size)
{
    if (max_size != 2 && max_size != 3) {
        throw std::invalid_argument("select_active_set: max_size must be 2 or 3");
    }
    if (!(cs_th_db >= 0.0)) {
        throw std::invalid_argument("select_active_set: cs_th_db must be >= 0");
    }
    if (gains.size() == 0) {
        throw std::invalid_argument("select_active_set: no stations");
    }
    detail::check_gains(gains, "select_active_set");

    std::vector<StationId> order(gains.size());
    std::iota(order.begin(), order.end(), StationId{0});
    const auto cap = std::min<std::size_t>(static_cast<std::size_t>(max_size), order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cap), order.end(),
                      [&](StationId l, StationId r) {
                          return gains[l] > gains[r] || (gains[l] == gains[r] && l < r);
                      });

    ActiveSet set;
    set.max_size = max_size;
    const double best_db = linear_to_db(gains[order[0]]);
    set.members.push_back(order[0]);
    for (std::size_t k = 1; k < cap; ++k) {
        if (best_db - linear_to_db(gains[order[k]]) < cs_th_db) {
            set.members.push_back(order[k]);
        } else {
            break;
        }
    }
    return set;
}

inline RegionLabel classify_region(const ActiveSet& set)
{
    switch (set.size()) {
    case 1: return RegionLabel::NonSHO;
    case 2: return RegionLabel::SHO2;
    case 3: return RegionLabel::SHO3;
    default: throw std::invalid_argument("classify_region: active set size must be 1, 2 or 3");
    }
}

/// Mean number of extra radio links per user.
inline double sho_overhead(std::span<const ActiveSet> sets)
{
    if (sets.empty()) {
        throw std::invalid_argument("sho_overhead: no active sets");
    }
    std::size_t links = 0;
    for (const auto& s : sets) links += s.size();
    return static_cast<double>(links) / static_cast<double>(sets.size()) - 1.0;
}

} // namespace shosim
