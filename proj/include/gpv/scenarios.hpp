#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gpv/grid.hpp"

// Initial-condition library: exact soliton pairs, a vortex dipole, and a
// seeded random corpus generator, all periodic-compatible (|u| -> 1 away from
// the excitations, zero net phase winding across the torus).

namespace gpv {

enum class ScenarioKind {
    uniform,         // u = 1
    constant_value,  // u = value_re + i value_im
    dark_pair,       // tanh((x-x1)/sqrt2) * tanh((x-x2)/sqrt2), D=1
    gray_soliton,    // counter-phased gray-soliton pair at speed c, D=1
    vortex_dipole,   // two opposite-winding tanh-core vortices, D=2
    random_zhidkov,  // 1 + band-limited random perturbation
};

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::uniform;
    // recognized params (all optional, sensible defaults):
    //   value_re, value_im          constant_value
    //   c                           gray_soliton speed, |c| < sqrt(2)
    //   x1, x2                      1D soliton positions (default L/4, 3L/4)
    //   separation                  vortex dipole separation (default L/4)
    //   amplitude, mode_cutoff, seed   random_zhidkov
    std::map<std::string, double> params;

    double get(const std::string& key, double fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

ScenarioKind scenario_kind_from_string(const std::string& s);
std::string to_string(ScenarioKind k);

ComplexField generate(const ScenarioSpec& spec, GridPtr grid);

// u = 1 + sum_{|m|<=cutoff} a_m e^{i k_m.x} with a_m drawn deterministically
// from the seed and the sum rescaled so ||u-1||_inf equals `amplitude`.
ComplexField random_zhidkov_field(std::uint64_t seed, double amplitude,
                                  int mode_cutoff, GridPtr grid);

// Exact traveling-wave profile (D=1, one soliton, non-periodic):
// u_c(x) = sqrt((2-c^2)/2) tanh(sqrt(2-c^2)/2 (x-x0)) + i c/sqrt2.
cplx gray_profile(double c, double x0, double x);

// Energy of one gray soliton, E(c) = (2-c^2)^{3/2}/3.
double gray_soliton_energy(double c);

}  // namespace gpv
