#pragma once

#include <vector>

#include "gpv/dynamics.hpp"
#include "gpv/grid.hpp"
#include "gpv/verdict.hpp"

// Ginzburg-Landau energy E(u) = 1/2 int |grad u|^2 + 1/4 int (1-|u|^2)^2,
// its decomposition over unit annuli C_j = {j <= rho < j+1} centered at the
// domain center, radial cutoffs theta_j, the localized energy identity and
// the time-integrated annular budget.

namespace gpv {

struct EnergyReport {
    double kinetic = 0.0;
    double potential = 0.0;
    double total = 0.0;
    std::vector<double> annular_kinetic;    // k_j
    std::vector<double> annular_potential;  // p_j
    int annulus_count = 0;                  // J = floor(L/2)
};

struct AnnularBudget {
    std::vector<double> K;  // int_0^T k_j dt
    std::vector<double> P;  // int_0^T p_j dt
    double horizon = 0.0;
};

enum class CutoffProfile { linear, smooth };

// theta_j: 1 for rho <= j, 0 for rho >= j+1, |grad theta_j| <= 2.
// The linear profile is clamp(j+1-rho, 0, 1) (slope 1); the smooth profile is
// a C-infinity ramp with slope <= 2, used where quadrature of kinked
// integrands would dominate a convergence measurement.
struct Cutoff {
    int j = 0;
    std::vector<double> values;
    std::vector<std::vector<double>> grad;  // analytic gradient, one per axis
    double gradient_bound = 0.0;            // max |grad theta_j|
};

// Distance from the domain center (L/2,...,L/2), no torus wrapping.
double center_radius(const Grid& g, std::size_t idx);

// Annulus index of a node: min(floor(rho), J-1). The outermost annulus
// absorbs every node with rho >= J-1 so the annuli tile the lattice exactly.
int annulus_count(const Grid& g);
int annulus_index(const Grid& g, std::size_t idx);

// Node count times dx^D of annulus j (the discrete vol(C_j)).
std::vector<double> annulus_volumes(const Grid& g);

EnergyReport energy(const ComplexField& u);

// Pointwise bound p_j <= 1/4 (1+||u||_inf^2)^2 vol(C_j), exact on the
// lattice.
std::vector<InequalityVerdict> annular_volume_bound_check(const ComplexField& u);

Cutoff make_cutoff(const Grid& g, int j,
                   CutoffProfile profile = CutoffProfile::linear);

// Max over interior samples of
//   | d/dt int (1/2|grad u|^2 + 1/4(1-|u|^2)^2) theta_j  +  Re int u_t^bar grad u . grad theta_j |
// with the time derivative by centered differences at the save cadence.
double localized_energy_identity_residual(const Trajectory& traj, int j,
                                          CutoffProfile profile = CutoffProfile::linear);

// Per-frame majorization |Re int u_t^bar grad u . grad theta_j| <=
// bound_const ||u_t||_{L2(ramp)} ||grad u||_{L2(ramp)} with bound_const = 2.
std::vector<InequalityVerdict> flux_majorization_check(const Trajectory& traj, int j,
                                                       CutoffProfile profile = CutoffProfile::linear);

struct AnnularBudgetResult {
    std::vector<InequalityVerdict> verdicts;  // per (j, sample) and per-j time-integrated
    AnnularBudget budget;
};

// Time-integrated annular budget: per saved sample t and annulus j,
//   sum_{l<j}(k_l+p_l)(t) <= E(u0) + 2 (int_0^t ||u_t||^2_{L2(C_j)})^{1/2}
//                                      (int_0^t ||grad u||^2_{L2(C_j)})^{1/2},
// and the once-more-integrated form
//   sum_{l<j}(K_l+P_l) <= T E(u0) + C T sqrt(K_j)(1+sqrt(P_j))
// with C = 4 sup_t ||u_t||_{L2(C_j)}/(1+sqrt(p_j)) (the measured constant of
// the equation-side estimate). Time integrals by trapezoid at save cadence.
AnnularBudgetResult annular_budget_check(const Trajectory& traj, double u0_energy);

}  // namespace gpv
