// Experiment runner: single scenarios, sweep grids, and the built-in
// presets reproducing the published figures. CSV on stdout, diagnostics
// on stderr.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "prpsim/config.hpp"
#include "prpsim/simulation.hpp"
#include "prpsim/sweep.hpp"

namespace {

void print_run(const prpsim::ScenarioConfig& cfg, bool verbose_records) {
    prpsim::RunResult result = prpsim::run_scenario(cfg);
    prpsim::SweepRow row{cfg.node_count,     cfg.flow_count, cfg.k_policy.str(),
                         cfg.protocol,       cfg.rng_seed,   result.agg};
    std::cout << prpsim::csv_header() << '\n' << prpsim::csv_row(row) << '\n';
    if (verbose_records) {
        std::cout << '\n' << prpsim::records_csv_header() << '\n';
        for (const auto& rec : result.records) {
            std::cout << prpsim::record_csv_row(rec) << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PRP route-discovery simulator"};
    app.require_subcommand(1);

    std::string config_path;
    bool verbose_records = false;
    CLI::App* run = app.add_subcommand("run", "run one scenario config");
    run->add_option("config", config_path, "scenario config file (JSON)")->required();
    run->add_flag("--verbose-records", verbose_records, "emit per-discovery detail CSV");

    std::string spec_path;
    unsigned parallelism = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "run a sweep spec file");
    sweep->add_option("spec", spec_path, "sweep spec file (JSON)")->required();
    sweep->add_option("--parallel", parallelism, "concurrent runs")->check(CLI::PositiveNumber);

    std::string preset_name;
    unsigned preset_parallelism = 1;
    CLI::App* preset = app.add_subcommand("preset", "run a built-in experiment grid");
    preset->add_option("name", preset_name, "preset name (fig3, fig5_6, fig7, fig8)")->required();
    preset->add_option("--parallel", preset_parallelism, "concurrent runs")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            print_run(prpsim::load_scenario(config_path), verbose_records);
        } else if (sweep->parsed()) {
            std::cout << prpsim::sweep_csv(
                prpsim::run_sweep(prpsim::load_sweep(spec_path), parallelism));
        } else if (preset->parsed()) {
            std::cout << prpsim::sweep_csv(
                prpsim::run_sweep(prpsim::preset(preset_name), preset_parallelism));
        }
    } catch (const prpsim::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
