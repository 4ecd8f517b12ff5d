#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shosim/capacity.hpp"
#include "shosim/channel.hpp"
#include "shosim/format.hpp"
#include "shosim/geometry.hpp"
#include "shosim/montecarlo.hpp"
#include "shosim/power_control.hpp"

namespace shosim {

/// Everything an experiment run depends on.
struct ExperimentSpec {
    std::string name = "fig8";
    RadioParams params;
    int rings = 2;
    double cell_radius = 1.0;
    double cs_th_db = 5.0; // largest selection window swept
    double cs_step_db = 1.0;
    int max_size = 2;
    Scheme scheme = Scheme::Unbalanced;
    std::optional<double> r_over_R;      // feasibility runs; per-figure default when unset
    std::optional<double> direction_deg; // feasibility runs; per-figure default when unset
    std::vector<double> sigma_grid{6.0, 7.0, 8.0, 9.0, 10.0};
    std::uint64_t seed = 1;
    std::size_t samples = 100000;
    unsigned threads = 1;
};

/// Numeric table with its configuration attached.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> metadata;

    [[nodiscard]] std::size_t column(std::string_view name) const
    {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end()) {
            throw std::out_of_range("Table: no column '" + std::string(name) + "'");
        }
        return static_cast<std::size_t>(it - columns.begin());
    }

    [[nodiscard]] double at(std::size_t row, std::string_view name) const { return rows.at(row).at(column(name)); }
};

struct ExperimentInfo {
    std::string_view name;
    std::string_view description;
};

inline constexpr std::array<ExperimentInfo, 6> figure_experiments{{
    {"fig2", "relative total power P_t/P_total vs shadowing, 3-way SHO, r/R = 0.6"},
    {"fig3", "relative total power P_t/P_total vs shadowing, 3-way SHO, r/R = 1.0"},
    {"fig4", "relative total power P_t/P_total vs shadowing, 2-way SHO, r/R = 0.6"},
    {"fig5", "relative total power P_t/P_total vs shadowing, 2-way SHO, r/R = 1.0"},
    {"fig7", "capacity gain vs SHO overhead, active set size 2 vs 3"},
    {"fig8", "capacity gain vs SHO overhead, balanced vs unbalanced (2-way)"},
}};

inline constexpr std::string_view custom_experiment = "custom";

inline bool is_known_experiment(std::string_view name)
{
    return name == custom_experiment ||
           std::any_of(figure_experiments.begin(), figure_experiments.end(),
                       [&](const ExperimentInfo& e) { return e.name == name; });
}

inline std::string experiment_choices()
{
    std::string out;
    for (const auto& e : figure_experiments) {
        out += std::string(e.name) + ", ";
    }
    return out + std::string(custom_experiment);
}

struct Placement {
    int ways = 2;
    double r_over_R = 0.6;
    double direction_deg = 0.0;
};

/// Mobile placement for the fixed-position power studies. A 3-way mobile
/// heads for the vertex shared by three cells, a 2-way one for the nearest
/// neighbouring station.
inline Placement feasibility_placement(const ExperimentSpec& spec)
{
    Placement p;
    if (spec.name == "fig2" || spec.name == "fig3") {
        p.ways = 3;
        p.direction_deg = direction::three_cell_corner * 180.0 / std::numbers::pi;
    } else if (spec.name == "fig4" || spec.name == "fig5") {
        p.ways = 2;
        p.direction_deg = direction::first_neighbour * 180.0 / std::numbers::pi;
    } else {
        throw std::invalid_argument("unknown feasibility experiment '" + spec.name +
                                    "'; valid choices: fig2, fig3, fig4, fig5");
    }
    p.r_over_R = (spec.name == "fig2" || spec.name == "fig4") ? 0.6 : 1.0;
    if (spec.r_over_R) p.r_over_R = *spec.r_over_R;
    if (spec.direction_deg) p.direction_deg = *spec.direction_deg;
    return p;
}

/// Selection windows 0, step, 2 step, ... up to and including cs_th_db.
inline std::vector<double> cs_grid(const ExperimentSpec& spec)
{
    if (!(spec.cs_step_db > 0.0)) {
        throw std::invalid_argument("cs_step must be > 0");
    }
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double cs = k * spec.cs_step_db;
        if (cs > spec.cs_th_db + 1e-9) break;
        grid.push_back(cs);
    }
    if (grid.back() < spec.cs_th_db - 1e-9) grid.push_back(spec.cs_th_db);
    return grid;
}

/// The `count` stations closest to `mobile`, nearest first, ties by id.
inline std::vector<StationId> nearest_stations(const CellLayout& layout, const MobilePosition& mobile,
                                               std::size_t count)
{
    if (count > layout.size()) {
        throw std::invalid_argument("nearest_stations: layout has only " + std::to_string(layout.size()) +
                                    " stations");
    }
    std::vector<StationId> ids(layout.size());
    std::iota(ids.begin(), ids.end(), StationId{0});
    std::stable_sort(ids.begin(), ids.end(), [&](StationId l, StationId r) {
        return distance(layout.stations[l].position, mobile) < distance(layout.stations[r].position, mobile);
    });
    ids.resize(count);
    return ids;
}

inline std::map<std::string, std::string> describe(const ExperimentSpec& spec)
{
    const RadioParams& p = spec.params;
    std::map<std::string, std::string> m;
    m["experiment"] = spec.name;
    m["chip_rate"] = format_number(p.chip_rate);
    m["bit_rate"] = format_number(p.bit_rate);
    m["activity"] = format_number(p.activity);
    m["orthogonality"] = format_number(p.orthogonality);
    m["ebio_target_db"] = format_number(linear_to_db(p.ebio_target));
    m["path_loss_exp"] = format_number(p.path_loss_exp);
    m["shadow_sigma_db"] = format_number(p.shadow_sigma_db);
    m["p_total"] = format_number(p.p_total);
    m["gamma"] = format_number(p.gamma);
    m["rings"] = std::to_string(spec.rings);
    m["cell_radius"] = format_number(spec.cell_radius);
    m["cs_th"] = format_number(spec.cs_th_db);
    m["cs_step"] = format_number(spec.cs_step_db);
    m["max_size"] = std::to_string(spec.max_size);
    m["scheme"] = std::string(to_string(spec.scheme));
    m["sigma_grid"] = format_list(spec.sigma_grid);
    m["seed"] = std::to_string(spec.seed);
    m["samples"] = std::to_string(spec.samples);
    m["r_over_R"] = spec.r_over_R ? format_number(*spec.r_over_R) : "-";
    m["direction_deg"] = spec.direction_deg ? format_number(*spec.direction_deg) : "-";
    return m;
}

/// Relative total power P_t / P_total for a mobile held at a fixed position
/// with a fixed geometric active set, averaged over shadowing, per sigma.
/// Both schemes are evaluated on the same shadowing draws.
inline Table run_feasibility(const ExperimentSpec& spec)
{
    const Placement place = feasibility_placement(spec);
    spec.params.validate();
    if (spec.sigma_grid.empty()) {
        throw std::invalid_argument("sigma_grid is empty");
    }

    const CellLayout layout = build_hex_layout(spec.rings, spec.cell_radius);
    const MobilePosition mobile =
        point_at_relative_distance(place.r_over_R, place.direction_deg * std::numbers::pi / 180.0, layout);
    const std::vector<StationId> serving = nearest_stations(layout, mobile, static_cast<std::size_t>(place.ways));

    Table table;
    table.columns = {"sigma_db", "mean_balanced", "mean_unbalanced", "se_balanced", "se_unbalanced"};
    for (double sigma : spec.sigma_grid) {
        RadioParams params = spec.params;
        params.shadow_sigma_db = sigma;
        params.validate();
        const auto sample = [&](RandomStream& rng, std::span<double> rel, std::span<double>) {
            const LinkGains gains = snapshot_gains(layout, mobile, params, rng);
            rel[0] = allocate(Scheme::Balanced, serving, gains, params).total / params.p_total;
            rel[1] = allocate(Scheme::Unbalanced, serving, gains, params).total / params.p_total;
        };
        const SampleMoments m = run_blocks(spec.seed, spec.samples, 2, 0, spec.threads, sample);
        table.rows.push_back({sigma, m.mean(0), m.mean(1), m.std_error(0), m.std_error(1)});
    }

    table.metadata = describe(spec);
    table.metadata["r_over_R"] = format_number(place.r_over_R);
    table.metadata["direction_deg"] = format_number(place.direction_deg);
    table.metadata["ways"] = std::to_string(place.ways);
    table.metadata["serving_ids"] = format_list(std::vector<double>(serving.begin(), serving.end()));
    return table;
}

/// Capacity gain for active-set sizes 2 and 3, both on the same snapshots.
///
/// The two curves reach different overheads at the same window, so the
/// table is indexed by the size-2 curve's overhead and the size-3 gain is
/// interpolated linearly in overhead between its own sweep points.
inline Table run_active_set_study(const ExperimentSpec& spec)
{
    const CellLayout layout = build_hex_layout(spec.rings, spec.cell_radius);
    const std::vector<double> grid = cs_grid(spec);
    const std::size_t n = grid.size();

    std::vector<Arm> arms{Arm{spec.scheme, 2, 0.0}};
    for (double cs : grid) arms.push_back(Arm{spec.scheme, 2, cs});
    for (double cs : grid) arms.push_back(Arm{spec.scheme, 3, cs});
    const PairedSweep sweep = run_paired_sweep(layout, spec.params, std::move(arms), spec.samples, spec.seed,
                                               spec.threads);
    const std::size_t base = 0;
    const auto as2 = [&](std::size_t i) { return 1 + i; };
    const auto as3 = [&](std::size_t i) { return 1 + n + i; };

    // Size-3 points ordered by overhead.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return sweep.overhead(as3(l)) < sweep.overhead(as3(r)); });

    Table table;
    table.columns = {"cs_th_db", "overhead", "gain_as2", "gain_as3", "se_as2", "se_as3", "se_diff"};
    for (std::size_t i = 0; i < n; ++i) {
        const double target = sweep.overhead(as2(i));

        std::size_t lo = order.front();
        std::size_t hi = order.front();
        for (std::size_t j = 0; j + 1 < n; ++j) {
            lo = order[j];
            hi = order[j + 1];
            if (sweep.overhead(as3(hi)) >= target) break;
        }
        const double o_lo = sweep.overhead(as3(lo));
        const double o_hi = sweep.overhead(as3(hi));
        double t = o_hi > o_lo ? (target - o_lo) / (o_hi - o_lo) : 0.0;
        t = std::clamp(t, 0.0, 1.0);

        const double g2 = sweep.gain(as2(i), base);
        const double g3 = (1.0 - t) * sweep.gain(as3(lo), base) + t * sweep.gain(as3(hi), base);
        const std::pair<std::size_t, double> g3_terms[] = {{as3(lo), 1.0 - t}, {as3(hi), t}};
        const std::pair<std::size_t, double> diff_terms[] = {{as2(i), 1.0}, {as3(lo), -(1.0 - t)}, {as3(hi), -t}};

        table.rows.push_back({grid[i], target, g2, g3, sweep.gain_std_error(as2(i), base),
                              sweep.gain_combination_std_error(g3_terms, base),
                              sweep.gain_combination_std_error(diff_terms, base)});
    }
    table.metadata = describe(spec);
    table.metadata["cs_grid"] = format_list(grid);
    return table;
}

/// Capacity gain of the balanced and unbalanced schemes with 2-way soft
/// handover, both on the same snapshots.
inline Table run_scheme_study(const ExperimentSpec& spec)
{
    const CellLayout layout = build_hex_layout(spec.rings, spec.cell_radius);
    const std::vector<double> grid = cs_grid(spec);
    const std::size_t n = grid.size();
    constexpr int max_size = 2;

    std::vector<Arm> arms{Arm{Scheme::Balanced, max_size, 0.0}};
    for (double cs : grid) arms.push_back(Arm{Scheme::Balanced, max_size, cs});
    for (double cs : grid) arms.push_back(Arm{Scheme::Unbalanced, max_size, cs});
    const PairedSweep sweep = run_paired_sweep(layout, spec.params, std::move(arms), spec.samples, spec.seed,
                                               spec.threads);

    Table table;
    table.columns = {"overhead", "gain_balanced", "gain_unbalanced", "se_balanced", "se_unbalanced"};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t bal = 1 + i;
        const std::size_t unb = 1 + n + i;
        table.rows.push_back({sweep.overhead(bal), sweep.gain(bal, 0), sweep.gain(unb, 0),
                              sweep.gain_std_error(bal, 0), sweep.gain_std_error(unb, 0)});
    }
    table.metadata = describe(spec);
    table.metadata["max_size"] = std::to_string(max_size);
    table.metadata["cs_grid"] = format_list(grid);
    return table;
}

/// A single gain curve for the configured scheme and active-set size.
inline Table run_custom(const ExperimentSpec& spec)
{
    const CellLayout layout = build_hex_layout(spec.rings, spec.cell_radius);
    const std::vector<double> grid = cs_grid(spec);
    const CapacityCurve curve =
        gain_curve(layout, spec.params, spec.scheme, spec.max_size, grid, spec.samples, spec.seed, spec.threads);

    Table table;
    table.columns = {"cs_th_db", "overhead", "mean_power", "se_power", "capacity", "gain", "se_gain"};
    for (const auto& p : curve.points) {
        table.rows.push_back(
            {p.cs_th_db, p.overhead, p.mean_power, p.power_std_error, p.capacity, p.gain, p.gain_std_error});
    }
    table.metadata = describe(spec);
    table.metadata["cs_grid"] = format_list(grid);
    return table;
}

inline Table run_experiment(const ExperimentSpec& spec)
{
    if (spec.samples < 1) {
        throw std::invalid_argument("samples must be >= 1");
    }
    if (spec.name == "fig2" || spec.name == "fig3" || spec.name == "fig4" || spec.name == "fig5") {
        return run_feasibility(spec);
    }
    if (spec.name == "fig7") return run_active_set_study(spec);
    if (spec.name == "fig8") return run_scheme_study(spec);
    if (spec.name == custom_experiment) return run_custom(spec);
    throw std::invalid_argument("unknown experiment '" + spec.name + "'; valid choices: " + experiment_choices());
}

} // namespace shosim
