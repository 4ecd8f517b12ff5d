#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shosim/shosim.hpp"

namespace {

void print_list(std::ostream& out)
{
    out << "experiments:\n";
    for (const auto& e : shosim::figure_experiments) {
        out << "  " << e.name << "  " << e.description << '\n';
    }
    out << "\ndefault parameters:\n";
    const shosim::RunConfig defaults = shosim::parse_config("");
    for (const auto& [key, value] : shosim::describe(defaults.spec)) {
        if (key == "experiment") continue;
        out << "  " << key << " = " << value << '\n';
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read config '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Downlink soft-handover power control simulator"};

    std::string experiment;
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<unsigned> threads;
    std::string out_path;
    bool list = false;

    app.add_option("--experiment", experiment, "fig2, fig3, fig4, fig5, fig7, fig8 or custom");
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--set", sets, "override one configuration key (key=value); repeatable");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--samples", samples, "Monte-Carlo samples per point");
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--out", out_path, "output CSV path (default: stdout)");
    app.add_flag("--list", list, "list experiments and default parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (list) {
        print_list(std::cout);
        return 0;
    }

    try {
        if (experiment.empty()) {
            throw std::invalid_argument("--experiment is required; valid choices: " + shosim::experiment_choices());
        }
        if (!shosim::is_known_experiment(experiment)) {
            throw std::invalid_argument("unknown experiment '" + experiment +
                                        "'; valid choices: " + shosim::experiment_choices());
        }
        const std::string content = config_path.empty() ? std::string{} : read_file(config_path);
        shosim::RunConfig cfg = shosim::parse_config(content, sets);
        cfg.spec.name = experiment;
        if (seed) cfg.spec.seed = *seed;
        if (samples) {
            if (*samples < 1) throw std::invalid_argument("--samples must be >= 1");
            cfg.spec.samples = *samples;
        }
        if (threads) cfg.spec.threads = *threads;
        cfg.out_path = out_path;

        const shosim::Table table = shosim::run_experiment(cfg.spec);
        if (cfg.out_path.empty()) {
            shosim::write_csv(table, std::cout);
        } else {
            shosim::emit_csv(table, cfg.out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "shosim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
