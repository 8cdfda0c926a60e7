// climpanel command-line driver.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "climpanel/cli.hpp"

int main(int argc, char** argv) {
    using namespace climpanel;
    CLI::App app{"Climate anomalies and regional price panels"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::vector<int> m_override;
    long long seed = -1;
    int regions = -1;

    struct Cmd {
        const char* name;
        const char* help;
        bool needs_config;
    };
    const Cmd cmds[] = {
        {"anomaly", "Historical norms, anomalies and seasonal shocks for each norm window", true},
        {"lp", "Panel local projections of cumulative price growth on climate shocks", true},
        {"ardl", "Panel ARDL long-run effects of signed anomalies", true},
        {"stats", "Per-region summary statistics", true},
        {"simulate", "Write a synthetic climate/price panel and a matching config", false},
    };
    for (const auto& c : cmds) {
        auto* sub = app.add_subcommand(c.name, c.help);
        auto* opt = sub->add_option("-c,--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
        if (c.needs_config) opt->required();
        sub->add_option("-o,--out", out_override, "Output directory (overrides [output] dir)");
        if (std::string(c.name) == "simulate") {
            sub->add_option("--seed", seed, "Random seed")->check(CLI::NonNegativeNumber);
            sub->add_option("--regions", regions, "Number of regions")->check(CLI::PositiveNumber);
        } else {
            sub->add_option("--m", m_override, "Norm windows in years (overrides [climate] m and [ardl] m)")
                ->delimiter(',')
                ->check(CLI::PositiveNumber);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? cli::kOk : cli::kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return cli::kUsage;
    }
    if (!m_override.empty()) {
        cfg.climate.ms = m_override;
        cfg.ardl.ms = m_override;
    }
    if (seed >= 0) cfg.simulate.seed = static_cast<std::uint64_t>(seed);
    if (regions > 0) cfg.simulate.regions = regions;

    std::filesystem::path out_dir = out_override.empty() ? cfg.resolve(cfg.output_dir) : std::filesystem::path(out_override);
    return cli::run_command(command, cfg, out_dir);
}
