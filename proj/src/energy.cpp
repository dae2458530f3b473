#include "gpv/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gpv {

namespace {

// Ramp shape on s in [0,1], value 1 at s=0 and 0 at s=1.
// linear: 1-s (slope 1). smooth: C-infinity partition-of-unity ramp
// f(1-s)/(f(s)+f(1-s)) with f(t)=exp(-1/t); its slope peaks at exactly 2.
double ramp_value(CutoffProfile p, double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    if (p == CutoffProfile::linear) return 1.0 - s;
    double f = std::exp(-1.0 / s);
    double g = std::exp(-1.0 / (1.0 - s));
    return g / (f + g);
}

double ramp_slope(CutoffProfile p, double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    if (p == CutoffProfile::linear) return -1.0;
    double f = std::exp(-1.0 / s);
    double g = std::exp(-1.0 / (1.0 - s));
    double fp = f / (s * s);
    double gp = -g / ((1.0 - s) * (1.0 - s));
    return (gp * f - g * fp) / ((f + g) * (f + g));
}

}  // namespace

double center_radius(const Grid& g, std::size_t idx) {
    const double c = 0.5 * g.length;
    if (g.dim == 1) return std::abs(g.coord(int(idx)) - c);
    std::size_t n = static_cast<std::size_t>(g.n);
    double x = g.coord(int(idx / n)) - c;
    double y = g.coord(int(idx % n)) - c;
    return std::sqrt(x * x + y * y);
}

int annulus_count(const Grid& g) {
    return std::max(1, int(std::floor(0.5 * g.length)));
}

int annulus_index(const Grid& g, std::size_t idx) {
    int j = int(std::floor(center_radius(g, idx)));
    return std::min(j, annulus_count(g) - 1);
}

std::vector<double> annulus_volumes(const Grid& g) {
    std::vector<double> vol(std::size_t(annulus_count(g)), 0.0);
    const double cell = g.cell_volume();
    for (std::size_t i = 0; i < g.size(); ++i)
        vol[std::size_t(annulus_index(g, i))] += cell;
    return vol;
}

EnergyReport energy(const ComplexField& u) {
    require_finite(u, "energy input");
    const Grid& g = u.g();
    const int J = annulus_count(g);
    EnergyReport r;
    r.annulus_count = J;
    r.annular_kinetic.assign(std::size_t(J), 0.0);
    r.annular_potential.assign(std::size_t(J), 0.0);

    auto grads = gradient(u);
    const double cell = g.cell_volume();
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double gk = 0.0;
        for (const auto& d : grads) gk += std::norm(d.values[i]);
        double kin = 0.5 * gk * cell;
        double q = 1.0 - std::norm(u.values[i]);
        double pot = 0.25 * q * q * cell;
        std::size_t j = std::size_t(annulus_index(g, i));
        r.annular_kinetic[j] += kin;
        r.annular_potential[j] += pot;
    }
    for (int j = 0; j < J; ++j) {
        r.kinetic += r.annular_kinetic[std::size_t(j)];
        r.potential += r.annular_potential[std::size_t(j)];
    }
    r.total = r.kinetic + r.potential;
    return r;
}

std::vector<InequalityVerdict> annular_volume_bound_check(const ComplexField& u) {
    EnergyReport e = energy(u);
    double linf = norm_linf(u);
    auto vol = annulus_volumes(u.g());
    double c = 0.25 * (1.0 + linf * linf) * (1.0 + linf * linf);
    std::vector<InequalityVerdict> out;
    out.reserve(vol.size());
    for (std::size_t j = 0; j < vol.size(); ++j) {
        out.push_back(make_verdict("annular_bound_j" + std::to_string(j),
                                   e.annular_potential[j], c * vol[j], c));
    }
    return out;
}

Cutoff make_cutoff(const Grid& g, int j, CutoffProfile profile) {
    if (j < 0) throw std::invalid_argument("make_cutoff: j must be >= 0");
    if (double(j + 1) >= 0.5 * g.length)
        throw std::invalid_argument(
            "make_cutoff: ramp [j, j+1] must be strictly inside radius L/2");

    Cutoff c;
    c.j = j;
    c.values.resize(g.size());
    c.grad.assign(std::size_t(g.dim), std::vector<double>(g.size(), 0.0));
    const double ctr = 0.5 * g.length;
    std::size_t n = static_cast<std::size_t>(g.n);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double x = (g.dim == 1 ? g.coord(int(i)) : g.coord(int(i / n))) - ctr;
        double y = g.dim == 2 ? g.coord(int(i % n)) - ctr : 0.0;
        double rho = std::sqrt(x * x + y * y);
        double s = rho - double(j);
        c.values[i] = ramp_value(profile, s);
        double sl = ramp_slope(profile, s);
        if (sl != 0.0 && rho > 0.0) {
            c.grad[0][i] = sl * x / rho;
            if (g.dim == 2) c.grad[1][i] = sl * y / rho;
            c.gradient_bound = std::max(c.gradient_bound, std::abs(sl));
        }
    }
    return c;
}

namespace {

struct LocalizedFrames {
    std::vector<double> e_loc;  // int (1/2|grad u|^2 + 1/4(1-|u|^2)^2) theta dx
    std::vector<double> flux;   // -Re int u_t^bar grad u . grad theta dx
    std::vector<double> ut_ramp;    // ||u_t||_{L2(C_j)}
    std::vector<double> gradu_ramp; // ||grad u||_{L2(C_j)}
};

LocalizedFrames localized_frames(const Trajectory& traj, const Cutoff& theta) {
    LocalizedFrames lf;
    const Grid& g = traj.states.front().g();
    const double cell = g.cell_volume();
    const int j = theta.j;
    for (const ComplexField& u : traj.states) {
        auto grads = gradient(u);
        ComplexField ut = u_dot(u, false);
        double eloc = 0.0, flux = 0.0, ut2 = 0.0, gu2 = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            double gk = 0.0;
            for (const auto& d : grads) gk += std::norm(d.values[i]);
            double q = 1.0 - std::norm(u.values[i]);
            eloc += (0.5 * gk + 0.25 * q * q) * theta.values[i];
            cplx dot(0.0, 0.0);
            for (int a = 0; a < g.dim; ++a)
                dot += grads[std::size_t(a)].values[i] * theta.grad[std::size_t(a)][i];
            flux += (std::conj(ut.values[i]) * dot).real();
            double rho = center_radius(g, i);
            if (rho >= double(j) && rho < double(j + 1)) {
                ut2 += std::norm(ut.values[i]);
                gu2 += gk;
            }
        }
        lf.e_loc.push_back(eloc * cell);
        lf.flux.push_back(-flux * cell);
        lf.ut_ramp.push_back(std::sqrt(ut2 * cell));
        lf.gradu_ramp.push_back(std::sqrt(gu2 * cell));
    }
    return lf;
}

}  // namespace

double localized_energy_identity_residual(const Trajectory& traj, int j,
                                          CutoffProfile profile) {
    if (traj.states.size() < 3)
        throw std::invalid_argument("localized identity: need >= 3 samples");
    const Grid& g = traj.states.front().g();
    Cutoff theta = make_cutoff(g, j, profile);
    LocalizedFrames lf = localized_frames(traj, theta);
    double res = 0.0;
    for (std::size_t i = 1; i + 1 < lf.e_loc.size(); ++i) {
        double dt2 = traj.times[i + 1] - traj.times[i - 1];
        double lhs = (lf.e_loc[i + 1] - lf.e_loc[i - 1]) / dt2;
        res = std::max(res, std::abs(lhs - lf.flux[i]));
    }
    return res;
}

std::vector<InequalityVerdict> flux_majorization_check(const Trajectory& traj, int j,
                                                       CutoffProfile profile) {
    const Grid& g = traj.states.front().g();
    Cutoff theta = make_cutoff(g, j, profile);
    LocalizedFrames lf = localized_frames(traj, theta);
    std::vector<InequalityVerdict> out;
    for (std::size_t i = 0; i < lf.flux.size(); ++i) {
        out.push_back(make_verdict(
            "flux_majorization_j" + std::to_string(j) + "_f" + std::to_string(i),
            std::abs(lf.flux[i]), 2.0 * lf.ut_ramp[i] * lf.gradu_ramp[i], 2.0,
            1e-14));
    }
    return out;
}

AnnularBudgetResult annular_budget_check(const Trajectory& traj, double u0_energy) {
    const std::size_t nf = traj.states.size();
    if (nf < 2) throw std::invalid_argument("annular budget: need >= 2 samples");
    const Grid& g = traj.states.front().g();
    const int J = annulus_count(g);
    const double cell = g.cell_volume();

    // per-frame per-annulus quantities
    std::vector<std::vector<double>> kj(nf), pj(nf), ut2(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        EnergyReport e = energy(traj.states[f]);
        kj[f] = e.annular_kinetic;
        pj[f] = e.annular_potential;
        ComplexField ut = u_dot(traj.states[f], false);
        ut2[f].assign(std::size_t(J), 0.0);
        for (std::size_t i = 0; i < ut.values.size(); ++i)
            ut2[f][std::size_t(annulus_index(g, i))] += std::norm(ut.values[i]) * cell;
    }

    AnnularBudgetResult r;
    r.budget.horizon = traj.times.back() - traj.times.front();
    r.budget.K.assign(std::size_t(J), 0.0);
    r.budget.P.assign(std::size_t(J), 0.0);

    // cumulative trapezoid integrals per annulus
    std::vector<std::vector<double>> Ik(nf), Ip(nf), Iut(nf);
    Ik[0].assign(std::size_t(J), 0.0);
    Ip[0].assign(std::size_t(J), 0.0);
    Iut[0].assign(std::size_t(J), 0.0);
    for (std::size_t f = 1; f < nf; ++f) {
        double h = 0.5 * (traj.times[f] - traj.times[f - 1]);
        Ik[f].resize(std::size_t(J));
        Ip[f].resize(std::size_t(J));
        Iut[f].resize(std::size_t(J));
        for (int j = 0; j < J; ++j) {
            std::size_t s = std::size_t(j);
            Ik[f][s] = Ik[f - 1][s] + h * (kj[f][s] + kj[f - 1][s]);
            Ip[f][s] = Ip[f - 1][s] + h * (pj[f][s] + pj[f - 1][s]);
            Iut[f][s] = Iut[f - 1][s] + h * (ut2[f][s] + ut2[f - 1][s]);
        }
    }
    r.budget.K = Ik[nf - 1];
    r.budget.P = Ip[nf - 1];

    // sample-wise budget: sum_{l<j}(k_l+p_l)(t) <= E(u0) + 2 sqrt(Iut) sqrt(2 Ik)
    for (std::size_t f = 0; f < nf; ++f) {
        for (int j = 0; j < J; ++j) {
            double lhs = 0.0;
            for (int l = 0; l < j; ++l)
                lhs += kj[f][std::size_t(l)] + pj[f][std::size_t(l)];
            double rhs = u0_energy + 2.0 * std::sqrt(Iut[f][std::size_t(j)]) *
                                         std::sqrt(2.0 * Ik[f][std::size_t(j)]);
            r.verdicts.push_back(make_verdict(
                "annular_budget_j" + std::to_string(j) + "_f" + std::to_string(f),
                lhs, rhs, 2.0, 1e-8));
        }
    }

    // time-integrated form with the measured equation-side constant
    const double T = r.budget.horizon;
    for (int j = 0; j < J; ++j) {
        std::size_t s = std::size_t(j);
        double c5 = 0.0;
        for (std::size_t f = 0; f < nf; ++f)
            c5 = std::max(c5, std::sqrt(ut2[f][s]) / (1.0 + std::sqrt(pj[f][s])));
        double C = 4.0 * c5 * std::max(1.0, std::sqrt(T));
        double lhs = 0.0;
        for (int l = 0; l < j; ++l)
            lhs += r.budget.K[std::size_t(l)] + r.budget.P[std::size_t(l)];
        double rhs = T * u0_energy +
                     C * T * std::sqrt(r.budget.K[s]) * (1.0 + std::sqrt(r.budget.P[s]));
        r.verdicts.push_back(make_verdict(
            "annular_budget_integrated_j" + std::to_string(j), lhs, rhs, C, 1e-8));
    }
    return r;
}

}  // namespace gpv
