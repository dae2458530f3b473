#include "gpv/inequalities.hpp"

#include <cmath>
#include <stdexcept>

#include "gpv/energy.hpp"

namespace gpv {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

InequalityVerdict frequency_split_bound(const ComplexField& phi, double R) {
    if (phi.g().dim != 2)
        throw std::invalid_argument("frequency_split_bound: D=2 only");
    if (!(R > 0.0)) throw std::invalid_argument("frequency_split_bound: R > 0");
    NormReport nr = norms(phi, 2);
    double h1 = std::sqrt(nr.l2 * nr.l2 + nr.grad_l2 * nr.grad_l2);
    double lhs = nr.fourier_l1 / (4.0 * kPi * kPi);
    const double c = std::sqrt(kPi) * 1.05;
    double rhs = c * (h1 * std::sqrt(std::log(1.0 + R * R)) + nr.lap_l2 / R);
    return make_verdict("freq_split", lhs, rhs, c);
}

InequalityVerdict gagliardo_nirenberg_check(const ComplexField& u) {
    if (u.g().dim != 2)
        throw std::invalid_argument("gagliardo_nirenberg_check: D=2 only");
    NormReport nr = norms(u, 1);
    if (nr.grad_l2 == 0.0)
        throw std::invalid_argument("gagliardo_nirenberg_check: constant field");
    auto grads = gradient(u);
    double s4 = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double g2 = std::norm(grads[0].values[i]) + std::norm(grads[1].values[i]);
        s4 += g2 * g2;
    }
    double grad_l4_sq = std::sqrt(s4 * u.g().cell_volume());
    const double c = 2.0;
    return make_verdict("gagliardo_nirenberg", grad_l4_sq,
                        c * nr.grad_l2 * nr.lap_l2, c);
}

namespace {

// (1+sqrt(E))(1+log(1+||Lap u||^2))^{1/2}, the c=1 right-hand side.
double bg_rhs_unit(const ComplexField& u) {
    if (u.g().dim != 2)
        throw std::invalid_argument("brezis_gallouet: D=2 only");
    NormReport nr = norms(u, 1);
    double E = energy(u).total;
    return (1.0 + std::sqrt(E)) *
           std::sqrt(1.0 + std::log(1.0 + nr.lap_l2 * nr.lap_l2));
}

}  // namespace

double brezis_gallouet_ratio(const ComplexField& u) {
    return norm_linf(u) / bg_rhs_unit(u);
}

InequalityVerdict brezis_gallouet_bound(const ComplexField& u, double c) {
    return make_verdict("brezis_gallouet", norm_linf(u), c * bg_rhs_unit(u), c);
}

InequalityVerdict apriori_laplacian_bound(const ComplexField& u) {
    NormReport nr = norms(u, 1);
    ComplexField ut = u_dot(u, false);
    double E = energy(u).total;
    double rhs = norm_l2(ut) + 2.0 * nr.linf * std::sqrt(E);
    return make_verdict("apriori_laplacian", nr.lap_l2, rhs, 2.0, 1e-10);
}

namespace {

// Per-frame 1/2||w||^2 and the identity right-hand side
// 2 int Re(w u^bar) Im(w u^bar) dx, with w = u_t from the equation.
struct WFrames {
    std::vector<double> half_w2;
    std::vector<double> rhs;
    std::vector<double> linf;
    std::vector<double> w2;
};

WFrames w_frames(const Trajectory& traj) {
    WFrames wf;
    for (const ComplexField& u : traj.states) {
        ComplexField w = u_dot(u, false);
        double half = 0.0, rhs = 0.0, linf = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            half += std::norm(w.values[i]);
            // from Im of the w-equation paired with w: the surviving term is
            // -2 Re(w u^bar) Im(w u^bar)
            cplx wu = w.values[i] * std::conj(u.values[i]);
            rhs -= wu.real() * wu.imag();
            linf = std::max(linf, std::abs(u.values[i]));
        }
        const double cell = u.g().cell_volume();
        wf.half_w2.push_back(0.5 * half * cell);
        wf.w2.push_back(half * cell);
        wf.rhs.push_back(2.0 * rhs * cell);
        wf.linf.push_back(linf);
    }
    return wf;
}

}  // namespace

double w_energy_identity_residual(const Trajectory& traj) {
    if (traj.states.size() < 3)
        throw std::invalid_argument("w identity: need >= 3 samples");
    WFrames wf = w_frames(traj);
    double res = 0.0;
    for (std::size_t i = 1; i + 1 < wf.half_w2.size(); ++i) {
        double dt2 = traj.times[i + 1] - traj.times[i - 1];
        double lhs = (wf.half_w2[i + 1] - wf.half_w2[i - 1]) / dt2;
        res = std::max(res, std::abs(lhs - wf.rhs[i]));
    }
    return res;
}

std::vector<InequalityVerdict> w_majorization_check(const Trajectory& traj) {
    WFrames wf = w_frames(traj);
    std::vector<InequalityVerdict> out;
    for (std::size_t i = 0; i < wf.rhs.size(); ++i) {
        out.push_back(make_verdict("w_majorization_f" + std::to_string(i),
                                   std::abs(wf.rhs[i]),
                                   2.0 * wf.linf[i] * wf.linf[i] * wf.w2[i], 2.0,
                                   1e-12));
    }
    return out;
}

GronwallEnvelope gronwall_envelope(const std::vector<double>& times,
                                   const std::vector<double>& w_l2, double c_fit) {
    if (c_fit < 0.0 || !std::isfinite(c_fit))
        throw std::invalid_argument("gronwall_envelope: c_fit must be >= 0");
    if (times.size() != w_l2.size() || times.empty())
        throw std::invalid_argument("gronwall_envelope: bad input sizes");

    GronwallEnvelope env;
    env.c_tilde = c_fit;
    env.y0 = w_l2.front() * w_l2.front();
    env.times = times;
    env.envelope.resize(times.size());
    env.envelope[0] = env.y0;

    auto f = [c_fit](double y) {
        return 2.0 * c_fit * (1.0 + std::log(2.0 + y)) * y;
    };
    double y = env.y0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        double h = times[i] - times[i - 1];
        double k1 = f(y);
        double k2 = f(y + 0.5 * h * k1);
        double k3 = f(y + 0.5 * h * k2);
        double k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        env.envelope[i] = y;
    }
    env.double_exp_b = 2.0 * c_fit;
    env.double_exp_a = std::log(std::max(env.y0, 2.0));
    return env;
}

double gronwall_rate_constant(double c_bg, double energy_value, double sup_linf) {
    double ce = std::max(1.0, 2.0 * sup_linf * std::sqrt(energy_value));
    return 4.0 * c_bg * c_bg * (1.0 + energy_value) *
           (1.0 + std::log(2.0 * ce * ce));
}

}  // namespace gpv
