#include <CLI11.hpp>

#include "gpv/runner.hpp"

// gpverify run <config.json>          simulate + verification checks
// gpverify corpus-scan <config.json>  inequality-constant corpus fits

int main(int argc, char** argv) {
    CLI::App app{"Gross-Pitaevskii pseudo-spectral simulator and inequality "
                 "verification suite"};
    app.require_subcommand(1);

    std::string run_config, scan_config;
    auto* run_cmd = app.add_subcommand("run", "run a simulation + checks");
    run_cmd->add_option("config", run_config, "JSON run config")->required();
    auto* scan_cmd = app.add_subcommand("corpus-scan", "scan a random-field corpus");
    scan_cmd->add_option("config", scan_config, "JSON corpus config")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) return gpv::run(run_config);
    return gpv::corpus_scan(scan_config);
}
