#include "gpv/scenarios.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gpv {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

double min_image(double d, double L) {
    d = std::fmod(d, L);
    if (d < -0.5 * L) d += L;
    if (d >= 0.5 * L) d -= L;
    return d;
}

// Jacobi theta_1 for the square torus (tau = i, nome q = e^{-pi}), complex
// argument. The series converges in a handful of terms for |Im v| <= pi.
cplx theta1(cplx v) {
    cplx sum(0.0, 0.0);
    double sign = 1.0;
    for (int n = 0; n <= 12; ++n) {
        double np = n + 0.5;
        sum += sign * std::exp(-kPi * np * np) * std::sin(double(2 * n + 1) * v);
        sign = -sign;
    }
    return 2.0 * sum;
}

ComplexField vortex_dipole(GridPtr grid, double separation) {
    const Grid& g = *grid;
    if (g.dim != 2)
        throw std::invalid_argument("vortex_dipole requires dim=2");
    if (!(separation > 0.0) || separation >= 0.5 * g.length)
        throw std::invalid_argument("vortex_dipole: separation must be in (0, L/2)");
    const double L = g.length;
    const double x0 = 0.5 * L;
    const double ya = 0.5 * L + 0.5 * separation;  // winding +1
    const double yb = 0.5 * L - 0.5 * separation;  // winding -1
    // Same x for both cores: the theta-quotient phase is then exactly doubly
    // periodic (the y-translation cofactors cancel up to a constant phase).
    ComplexField u = make_field(grid);
    std::size_t n = static_cast<std::size_t>(g.n);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double x = g.coord(int(i / n));
        double y = g.coord(int(i % n));
        double rxa = min_image(x - x0, L), rya = min_image(y - ya, L);
        double rxb = min_image(x - x0, L), ryb = min_image(y - yb, L);
        double ra = std::sqrt(rxa * rxa + rya * rya);
        double rb = std::sqrt(rxb * rxb + ryb * ryb);
        cplx va = kPi / L * cplx(x - x0, y - ya);
        cplx vb = kPi / L * cplx(x - x0, y - yb);
        // complex argument of theta_1 is v conjugated into position space:
        // zeros of theta1(pi(z - z0)/L) at z = z0 give winding +1
        cplx Fa = theta1(cplx(va.real(), va.imag()));
        cplx Fb = theta1(cplx(vb.real(), vb.imag()));
        cplx pa = std::abs(Fa) > 0.0 ? Fa / std::abs(Fa) : cplx(1.0, 0.0);
        cplx pb = std::abs(Fb) > 0.0 ? Fb / std::abs(Fb) : cplx(1.0, 0.0);
        u.values[i] = std::tanh(ra / kSqrt2) * std::tanh(rb / kSqrt2) * pa * std::conj(pb);
    }
    return u;
}

double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * double(rng() >> 11) * 0x1.0p-53 - 1.0;
}

}  // namespace

cplx gray_profile(double c, double x0, double x) {
    double a = std::sqrt((2.0 - c * c) / 2.0);
    return cplx(a * std::tanh(0.5 * std::sqrt(2.0 - c * c) * (x - x0)), c / kSqrt2);
}

double gray_soliton_energy(double c) {
    return std::pow(2.0 - c * c, 1.5) / 3.0;
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
    if (s == "uniform") return ScenarioKind::uniform;
    if (s == "constant_value") return ScenarioKind::constant_value;
    if (s == "dark_pair") return ScenarioKind::dark_pair;
    if (s == "gray_soliton") return ScenarioKind::gray_soliton;
    if (s == "vortex_dipole") return ScenarioKind::vortex_dipole;
    if (s == "random_zhidkov") return ScenarioKind::random_zhidkov;
    throw std::invalid_argument("unknown scenario kind: " + s);
}

std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::uniform: return "uniform";
        case ScenarioKind::constant_value: return "constant_value";
        case ScenarioKind::dark_pair: return "dark_pair";
        case ScenarioKind::gray_soliton: return "gray_soliton";
        case ScenarioKind::vortex_dipole: return "vortex_dipole";
        case ScenarioKind::random_zhidkov: return "random_zhidkov";
    }
    throw std::logic_error("unreachable");
}

ComplexField generate(const ScenarioSpec& spec, GridPtr grid) {
    const Grid& g = *grid;
    switch (spec.kind) {
        case ScenarioKind::uniform:
            return make_field(grid, cplx(1.0, 0.0));
        case ScenarioKind::constant_value:
            return make_field(grid, cplx(spec.get("value_re", 1.0),
                                         spec.get("value_im", 0.0)));
        case ScenarioKind::dark_pair:
        case ScenarioKind::gray_soliton: {
            if (g.dim != 1)
                throw std::invalid_argument("1D soliton scenario requires dim=1");
            double c = spec.kind == ScenarioKind::dark_pair ? 0.0 : spec.get("c", 0.0);
            if (std::abs(c) >= kSqrt2)
                throw std::invalid_argument("gray_soliton: |c| must be < sqrt(2)");
            double x1 = spec.get("x1", 0.25 * g.length);
            double x2 = spec.get("x2", 0.75 * g.length);
            // Counter-phased pair: s(x-x1) * conj(s(x-x2)) tends to 1 at both
            // ends of the torus (net winding zero). The conjugate factor is a
            // soliton traveling at -c.
            ComplexField u = make_field(grid);
            for (int i = 0; i < g.n; ++i) {
                double x = g.coord(i);
                u.values[std::size_t(i)] =
                    gray_profile(c, x1, x) * std::conj(gray_profile(c, x2, x));
            }
            return u;
        }
        case ScenarioKind::vortex_dipole:
            return vortex_dipole(grid, spec.get("separation", 0.25 * g.length));
        case ScenarioKind::random_zhidkov:
            return random_zhidkov_field(
                std::uint64_t(spec.get("seed", 0.0)), spec.get("amplitude", 0.1),
                int(spec.get("mode_cutoff", 8.0)), grid);
    }
    throw std::logic_error("unreachable");
}

ComplexField random_zhidkov_field(std::uint64_t seed, double amplitude,
                                  int mode_cutoff, GridPtr grid) {
    const Grid& g = *grid;
    if (amplitude < 0.0 || amplitude > 0.5)
        throw std::invalid_argument("random_zhidkov: amplitude must be in [0, 0.5]");
    if (mode_cutoff < 1 || mode_cutoff > g.n / 3)
        throw std::invalid_argument("random_zhidkov: mode_cutoff must be in [1, N/3]");

    // Coefficients drawn in fixed lexicographic mode order so the continuum
    // field depends only on the seed, not on N.
    std::mt19937_64 rng(seed);
    std::vector<cplx> hat(g.size(), cplx(0.0, 0.0));
    const double LD = std::pow(g.length, g.dim);
    auto mode_index = [&](int m) { return std::size_t(m >= 0 ? m : m + g.n); };
    if (g.dim == 1) {
        for (int m = -mode_cutoff; m <= mode_cutoff; ++m) {
            double re = uniform_pm1(rng), im = uniform_pm1(rng);
            if (m == 0) continue;  // keep the background exactly 1
            hat[mode_index(m)] = cplx(re, im) * LD;
        }
    } else {
        std::size_t n = static_cast<std::size_t>(g.n);
        for (int mx = -mode_cutoff; mx <= mode_cutoff; ++mx) {
            for (int my = -mode_cutoff; my <= mode_cutoff; ++my) {
                double re = uniform_pm1(rng), im = uniform_pm1(rng);
                if (mx == 0 && my == 0) continue;
                hat[mode_index(mx) * n + mode_index(my)] = cplx(re, im) * LD;
            }
        }
    }
    ComplexField pert = from_spectrum(grid, hat);
    double maxabs = norm_linf(pert);
    double scale = (amplitude == 0.0 || maxabs == 0.0) ? 0.0 : amplitude / maxabs;
    ComplexField u = make_field(grid, cplx(1.0, 0.0));
    for (std::size_t i = 0; i < u.values.size(); ++i)
        u.values[i] += scale * pert.values[i];
    return u;
}

}  // namespace gpv
