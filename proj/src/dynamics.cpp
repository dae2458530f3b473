#include "gpv/dynamics.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace gpv {

ComplexField u_dot(const ComplexField& u, bool do_dealias) {
    require_finite(u, "u_dot input");
    ComplexField lap = laplacian(u);
    ComplexField cubic;
    cubic.grid = u.grid;
    cubic.values.resize(u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i)
        cubic.values[i] = u.values[i] * (1.0 - std::norm(u.values[i]));
    if (do_dealias) cubic = dealias(cubic);
    ComplexField out;
    out.grid = u.grid;
    out.values.resize(u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i)
        out.values[i] = cplx(0.0, 1.0) * (lap.values[i] + cubic.values[i]);
    return out;
}

namespace {

// Pointwise phase rotation u <- u * exp(i (1-|u|^2) tau). |u| is invariant
// under the nonlinear flow so this substep is closed-form.
void nonlinear_rotation(ComplexField& u, double tau) {
    for (cplx& v : u.values) {
        double phase = (1.0 - std::norm(v)) * tau;
        v *= cplx(std::cos(phase), std::sin(phase));
    }
}

}  // namespace

ComplexField step_strang(const ComplexField& u, double dt, bool do_dealias) {
    if (dt == 0.0 || !std::isfinite(dt))
        throw std::invalid_argument("step_strang: bad dt");
    const Grid& g = u.g();
    ComplexField v = u;
    nonlinear_rotation(v, 0.5 * dt);

    std::vector<cplx> hat(v.values.size());
    dft(g, v.values.data(), hat.data(), FFTW_FORWARD);
    const double inv_n = 1.0 / double(g.size());
    const double kcut = g.dk() * (g.n / 3.0) + 1e-12 * g.dk();
    std::size_t n = static_cast<std::size_t>(g.n);
    for (std::size_t i = 0; i < hat.size(); ++i) {
        double kk = g.k2(i);
        double phase = -kk * dt;
        cplx mult = cplx(std::cos(phase), std::sin(phase)) * inv_n;
        if (do_dealias) {
            double kx = g.dim == 1 ? g.wavenumbers[i] : g.wavenumbers[i / n];
            double ky = g.dim == 1 ? 0.0 : g.wavenumbers[i % n];
            if (std::abs(kx) > kcut || std::abs(ky) > kcut) mult = 0.0;
        }
        hat[i] *= mult;
    }
    dft(g, hat.data(), v.values.data(), FFTW_BACKWARD);

    nonlinear_rotation(v, 0.5 * dt);
    return v;
}

ComplexField step_rk4(const ComplexField& u, double dt, bool do_dealias) {
    const Grid& g = u.g();
    if (std::abs(dt) > 0.5 * g.dx * g.dx)
        throw std::invalid_argument("step_rk4: dt exceeds 0.5*dx^2 stability guard");
    ComplexField k1 = u_dot(u, do_dealias);
    ComplexField tmp;
    tmp.grid = u.grid;
    tmp.values.resize(u.values.size());

    auto axpy = [&](const ComplexField& base, const ComplexField& k, double a) {
        for (std::size_t i = 0; i < base.values.size(); ++i)
            tmp.values[i] = base.values[i] + a * k.values[i];
    };
    axpy(u, k1, 0.5 * dt);
    ComplexField k2 = u_dot(tmp, do_dealias);
    axpy(u, k2, 0.5 * dt);
    ComplexField k3 = u_dot(tmp, do_dealias);
    axpy(u, k3, dt);
    ComplexField k4 = u_dot(tmp, do_dealias);

    ComplexField out;
    out.grid = u.grid;
    out.values.resize(u.values.size());
    const double c = dt / 6.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        out.values[i] = u.values[i] + c * (k1.values[i] + 2.0 * k2.values[i] +
                                           2.0 * k3.values[i] + k4.values[i]);
    return out;
}

Trajectory evolve(const ComplexField& u0, const IntegratorConfig& cfg,
                  const FrameCallback& on_frame) {
    if (cfg.dt == 0.0 || cfg.t_end <= 0.0 || cfg.save_every < 1)
        throw std::invalid_argument("evolve: bad integrator config");
    if (cfg.method == Method::strang_split && std::abs(cfg.dt) > 0.1)
        throw std::invalid_argument("evolve: |dt| > 0.1 rejected for strang_split");
    require_finite(u0, "initial condition");

    const long nsteps = std::lround(cfg.t_end / std::abs(cfg.dt));
    if (nsteps < 1 || std::abs(nsteps * std::abs(cfg.dt) - cfg.t_end) > 1e-9 * cfg.t_end)
        throw std::invalid_argument("evolve: t_end must be a multiple of dt");

    Trajectory traj;
    traj.config = cfg;
    traj.times.push_back(0.0);
    traj.states.push_back(u0);
    if (on_frame) on_frame(0.0, u0);

    ComplexField u = u0;
    double last_healthy = 0.0;
    for (long s = 1; s <= nsteps; ++s) {
        u = (cfg.method == Method::strang_split)
                ? step_strang(u, cfg.dt, cfg.dealias)
                : step_rk4(u, cfg.dt, cfg.dealias);
        double t = double(s) * cfg.dt;
        double linf = norm_linf(u);
        if (!std::isfinite(linf) || linf > 100.0)
            throw BlowUpError(last_healthy,
                              "evolve: blow-up detected at t=" + std::to_string(t) +
                                  " (||u||_inf=" + std::to_string(linf) +
                                  "), last healthy t=" + std::to_string(last_healthy));
        last_healthy = t;
        if (s % cfg.save_every == 0 || s == nsteps) {
            traj.times.push_back(t);
            traj.states.push_back(u);
            if (on_frame) on_frame(t, u);
        }
    }
    return traj;
}

double track_min_position(const ComplexField& u, double near, double half_width) {
    const Grid& g = u.g();
    if (g.dim != 1)
        throw std::invalid_argument("track_min_position: 1D only");
    const int n = g.n;
    auto pdist = [&](double a, double b) {
        double d = std::abs(a - b);
        return std::min(d, g.length - d);
    };
    int best = -1;
    double bestval = 0.0;
    for (int i = 0; i < n; ++i) {
        if (pdist(g.coord(i), near) > half_width) continue;
        double v = std::norm(u.values[std::size_t(i)]);
        if (best < 0 || v < bestval) {
            best = i;
            bestval = v;
        }
    }
    if (best < 0) throw std::invalid_argument("track_min_position: empty window");
    double fm = std::norm(u.values[std::size_t((best + n - 1) % n)]);
    double fp = std::norm(u.values[std::size_t((best + 1) % n)]);
    double denom = fm - 2.0 * bestval + fp;
    double off = denom > 0.0 ? 0.5 * (fm - fp) / denom : 0.0;
    return g.coord(best) + off * g.dx;
}

}  // namespace gpv
