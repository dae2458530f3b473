#pragma once

#include <string>
#include <vector>

#include "gpv/dynamics.hpp"
#include "gpv/energy.hpp"
#include "gpv/grid.hpp"
#include "gpv/scenarios.hpp"
#include "gpv/verdict.hpp"

// Batch front end: parse a JSON run config, evolve the scenario, run the
// requested verification checks and emit frames/verdicts/summary files.
//
// Exit-code contract: 0 all requested checks pass, 2 a check failed,
// 1 config or runtime error.

namespace gpv {

struct RunConfig {
    int schema_version = 1;
    int dim = 1;
    int n = 256;
    double length = 100.0;
    ScenarioSpec scenario;
    IntegratorConfig integrator;
    std::vector<std::string> checks;
    double bg_constant = 2.0;          // sup-norm bound constant for bg/gronwall
    double energy_tolerance = 1e-5;    // relative drift gate
    std::vector<int> localized_j{5, 10, 15};
    std::string output_dir = "out";
    std::string format = "csv";        // csv | json
};

struct DiagnosticsFrame {
    double t = 0.0;
    EnergyReport energy;
    NormReport norms;
    double w_l2 = 0.0;  // ||u_t||_{L2}
    std::vector<InequalityVerdict> verdicts;
};

// Known check identifiers (unknown ones are rejected at parse time).
const std::vector<std::string>& known_checks();

RunConfig parse_run_config_file(const std::string& path);
std::string serialize_run_config(const RunConfig& cfg);

int run(const std::string& config_path);
int corpus_scan(const std::string& config_path);

}  // namespace gpv
