#pragma once

// Test-only oracles, independent of the spectral implementation under test:
// adaptive quadrature for closed-form profile integrals and a plain random
// band-limited field generator.

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "gpv/grid.hpp"

namespace oracles {

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_quad_rec(const std::function<double(double)>& f, double a,
                                double b, double whole, double tol, int depth) {
    double c = 0.5 * (a + b);
    double left = simpson(f, a, c);
    double right = simpson(f, c, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_quad_rec(f, a, c, left, 0.5 * tol, depth - 1) +
           adaptive_quad_rec(f, c, b, right, 0.5 * tol, depth - 1);
}

inline double adaptive_quad(const std::function<double(double)>& f, double a,
                            double b, double tol = 1e-12) {
    return adaptive_quad_rec(f, a, b, simpson(f, a, b), tol, 40);
}

// Random band-limited complex field, mean `mean`, modes |m| <= cutoff per axis.
inline gpv::ComplexField random_band_limited(gpv::GridPtr grid, unsigned seed,
                                             int cutoff, double amplitude,
                                             gpv::cplx mean = {1.0, 0.0}) {
    const gpv::Grid& g = *grid;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    gpv::ComplexField u = gpv::make_field(grid, mean);
    const double two_pi = 2.0 * 3.14159265358979323846;
    auto add_mode = [&](int mx, int my, gpv::cplx a) {
        std::size_t n = std::size_t(g.n);
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            double x = g.dim == 1 ? g.coord(int(i)) : g.coord(int(i / n));
            double y = g.dim == 2 ? g.coord(int(i % n)) : 0.0;
            double ph = two_pi * (mx * x + my * y) / g.length;
            u.values[i] += a * gpv::cplx(std::cos(ph), std::sin(ph));
        }
    };
    for (int mx = -cutoff; mx <= cutoff; ++mx) {
        int my_lo = g.dim == 2 ? -cutoff : 0;
        int my_hi = g.dim == 2 ? cutoff : 0;
        for (int my = my_lo; my <= my_hi; ++my) {
            if (mx == 0 && my == 0) continue;
            add_mode(mx, my, amplitude * gpv::cplx(uni(rng), uni(rng)));
        }
    }
    return u;
}

}  // namespace oracles
