#pragma once

#include <functional>
#include <vector>

#include "gpv/grid.hpp"

// Time integration of i u_t + Lap(u) + u(1-|u|^2) = 0 by Strang split-step
// spectral stepping, plus an explicit RK4 oracle for cross-validation.

namespace gpv {

enum class Method { strang_split, rk4_oracle };

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Method method = Method::strang_split;
    int save_every = 1;
    bool dealias = true;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexField> states;
    IntegratorConfig config;
};

// Thrown when the blow-up detector trips (||u||_inf > 100 or NaN).
struct BlowUpError : std::runtime_error {
    double last_healthy_time;
    BlowUpError(double t, const std::string& msg)
        : std::runtime_error(msg), last_healthy_time(t) {}
};

// u_t = i (Lap u + u (1-|u|^2)). With dealias=true the cubic term is
// 2/3-rule filtered; diagnostics that rely on pointwise triangle
// inequalities should use the default (unfiltered) form.
ComplexField u_dot(const ComplexField& u, bool dealias = false);

ComplexField step_strang(const ComplexField& u, double dt, bool dealias = true);
ComplexField step_rk4(const ComplexField& u, double dt, bool dealias = true);

using FrameCallback = std::function<void(double t, const ComplexField& u)>;

// Steps u0 to t_end, saving every save_every steps (frame 0 is u0 exactly).
// The callback, when set, fires at each saved frame.
Trajectory evolve(const ComplexField& u0, const IntegratorConfig& cfg,
                  const FrameCallback& on_frame = nullptr);

// Sub-cell position of the minimum of |u| on a 1D grid by parabolic
// interpolation through the three lattice points around the discrete argmin.
// The search is restricted to the periodic window of given half-width around
// `near` (pass half-width >= L/2 to search everywhere).
double track_min_position(const ComplexField& u, double near, double half_width);

}  // namespace gpv
