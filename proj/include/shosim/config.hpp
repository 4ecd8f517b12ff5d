#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "shosim/channel.hpp"
#include "shosim/experiments.hpp"
#include "shosim/format.hpp"

namespace shosim {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    ExperimentSpec spec;
    std::string out_path; // empty = stdout
};

namespace config_detail {

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double to_double(std::string_view text)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError("'" + std::string(text) + "' is not a finite number");
    }
    return v;
}

template <class Int>
Int to_integer(std::string_view text)
{
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("'" + std::string(text) + "' is not a valid integer");
    }
    return v;
}

inline std::vector<double> to_list(std::string_view text)
{
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(to_double(trim(text.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

inline void require(bool ok, std::string_view what)
{
    if (!ok) throw ConfigError("value out of range: " + std::string(what));
}

using Setter = std::function<void(ExperimentSpec&, std::string_view)>;

inline Setter real(double RadioParams::*field, bool (*ok)(double), std::string_view range)
{
    return [=](ExperimentSpec& s, std::string_view v) {
        const double x = to_double(v);
        require(ok(x), range);
        s.params.*field = x;
    };
}

inline const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        t["chip_rate"] = real(&RadioParams::chip_rate, [](double x) { return x > 0; }, "must be > 0");
        t["bit_rate"] = real(&RadioParams::bit_rate, [](double x) { return x > 0; }, "must be > 0");
        t["activity"] = real(&RadioParams::activity, [](double x) { return x > 0 && x <= 1; }, "must lie in (0, 1]");
        t["orthogonality"] =
            real(&RadioParams::orthogonality, [](double x) { return x >= 0 && x <= 1; }, "must lie in [0, 1]");
        t["path_loss_exp"] = real(&RadioParams::path_loss_exp, [](double x) { return x > 0; }, "must be > 0");
        t["shadow_sigma_db"] = real(&RadioParams::shadow_sigma_db, [](double x) { return x >= 0; }, "must be >= 0");
        t["p_total"] = real(&RadioParams::p_total, [](double x) { return x > 0; }, "must be > 0");
        t["gamma"] = real(&RadioParams::gamma, [](double x) { return x > 0 && x <= 1; }, "must lie in (0, 1]");
        t["ebio_target_db"] = [](ExperimentSpec& s, std::string_view v) {
            s.params.ebio_target = db_to_linear(to_double(v));
        };
        t["rings"] = [](ExperimentSpec& s, std::string_view v) {
            const int r = to_integer<int>(v);
            require(r >= 0 && r <= 20, "must lie in [0, 20]");
            s.rings = r;
        };
        t["cell_radius"] = [](ExperimentSpec& s, std::string_view v) {
            const double x = to_double(v);
            require(x > 0, "must be > 0");
            s.cell_radius = x;
        };
        t["cs_th"] = [](ExperimentSpec& s, std::string_view v) {
            const double x = to_double(v);
            require(x >= 0, "must be >= 0");
            s.cs_th_db = x;
        };
        t["cs_step"] = [](ExperimentSpec& s, std::string_view v) {
            const double x = to_double(v);
            require(x > 0, "must be > 0");
            s.cs_step_db = x;
        };
        t["max_size"] = [](ExperimentSpec& s, std::string_view v) {
            const int m = to_integer<int>(v);
            require(m == 2 || m == 3, "must be 2 or 3");
            s.max_size = m;
        };
        t["scheme"] = [](ExperimentSpec& s, std::string_view v) {
            const auto parsed = parse_scheme(v);
            require(parsed.has_value(), "must be 'balanced' or 'unbalanced'");
            s.scheme = *parsed;
        };
        t["r_over_R"] = [](ExperimentSpec& s, std::string_view v) {
            const double x = to_double(v);
            require(x >= 0, "must be >= 0");
            s.r_over_R = x;
        };
        t["direction_deg"] = [](ExperimentSpec& s, std::string_view v) { s.direction_deg = to_double(v); };
        t["sigma_grid"] = [](ExperimentSpec& s, std::string_view v) {
            auto grid = to_list(v);
            for (double x : grid) require(x >= 0, "every entry must be >= 0");
            s.sigma_grid = std::move(grid);
        };
        t["seed"] = [](ExperimentSpec& s, std::string_view v) { s.seed = to_integer<std::uint64_t>(v); };
        t["samples"] = [](ExperimentSpec& s, std::string_view v) {
            const auto n = to_integer<std::size_t>(v);
            require(n >= 1, "must be >= 1");
            s.samples = n;
        };
        t["threads"] = [](ExperimentSpec& s, std::string_view v) {
            const auto n = to_integer<unsigned>(v);
            require(n >= 1 && n <= 1024, "must lie in [1, 1024]");
            s.threads = n;
        };
        // Short names for the radio symbols.
        t["a"] = t["orthogonality"];
        t["v"] = t["activity"];
        t["alpha"] = t["path_loss_exp"];
        t["sigma"] = t["shadow_sigma_db"];
        t["W"] = t["chip_rate"];
        return t;
    }();
    return table;
}

inline void apply(ExperimentSpec& spec, std::string_view key, std::string_view value, const std::string& where)
{
    const auto& t = setters();
    const auto it = t.find(key);
    if (it == t.end()) {
        throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    }
    if (value.empty()) {
        throw ConfigError(where + ": key '" + std::string(key) + "' has no value");
    }
    try {
        it->second(spec, value);
    } catch (const ConfigError& e) {
        throw ConfigError(where + ": key '" + std::string(key) + "': " + e.what());
    }
}

} // namespace config_detail

/// Keys accepted by parse_config, sorted.
inline std::vector<std::string> config_keys()
{
    std::vector<std::string> keys;
    for (const auto& [k, _] : config_detail::setters()) keys.push_back(k);
    return keys;
}

/// Resolves a run configuration: built-in defaults, then `key = value` lines
/// from `file_content` ('#' starts a comment), then `key=value` overrides.
inline RunConfig parse_config(std::string_view file_content, std::span<const std::string> overrides = {})
{
    using namespace config_detail;
    RunConfig cfg;

    std::size_t line_no = 0;
    while (!file_content.empty()) {
        ++line_no;
        const auto nl = file_content.find('\n');
        std::string_view line = file_content.substr(0, nl);
        file_content.remove_prefix(nl == std::string_view::npos ? file_content.size() : nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = "config line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(where + ": expected 'key = value', got '" + std::string(line) + "'");
        }
        apply(cfg.spec, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
    }

    for (const auto& item : overrides) {
        const std::string where = "--set " + item;
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected key=value");
        }
        const std::string_view view(item);
        apply(cfg.spec, trim(view.substr(0, eq)), trim(view.substr(eq + 1)), where);
    }

    try {
        cfg.spec.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

} // namespace shosim
