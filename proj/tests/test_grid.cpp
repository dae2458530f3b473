#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gpv/grid.hpp"
#include "oracles.hpp"

using namespace gpv;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

ComplexField mode_field(GridPtr g, int mx, int my = 0) {
    ComplexField u = make_field(g);
    std::size_t n = std::size_t(g->n);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        double x = g->dim == 1 ? g->coord(int(i)) : g->coord(int(i / n));
        double y = g->dim == 2 ? g->coord(int(i % n)) : 0.0;
        double ph = 2.0 * kPi * (mx * x + my * y) / g->length;
        u.values[i] = cplx(std::cos(ph), std::sin(ph));
    }
    return u;
}

double rel_linf_diff(const ComplexField& a, const ComplexField& b) {
    double m = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
        scale = std::max(scale, std::abs(b.values[i]));
    }
    return m / std::max(scale, 1e-300);
}
}  // namespace

TEST_CASE("make_grid basics") {
    auto g = make_grid(1, 8, 2.0 * kPi);
    CHECK(g->dx == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    std::vector<double> ks = g->wavenumbers;
    std::sort(ks.begin(), ks.end());
    for (int i = 0; i < 8; ++i) CHECK(ks[std::size_t(i)] == doctest::Approx(i - 4.0));

    auto g2 = make_grid(2, 16, 10.0);
    CHECK(g2->size() == 256);
    CHECK(g2->wavenumbers[1] == doctest::Approx(2.0 * kPi / 10.0));
    CHECK(g2->dx * g2->n == doctest::Approx(10.0));

    CHECK_THROWS(make_grid(1, 7, 1.0));
    CHECK_THROWS(make_grid(3, 16, 1.0));
    CHECK_THROWS(make_grid(1, 16, -1.0));
    CHECK_THROWS(make_grid(1, 4, 1.0));
}

TEST_CASE("transform round trip") {
    for (int dim : {1, 2}) {
        auto g = make_grid(dim, 32, 7.5);
        ComplexField u = oracles::random_band_limited(g, 11u + unsigned(dim), 5, 0.4);
        ComplexField back = from_spectrum(g, spectrum(u));
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            num += std::norm(back.values[i] - u.values[i]);
            den += std::norm(u.values[i]);
        }
        CHECK(std::sqrt(num / den) < 1e-12);
    }
}

TEST_CASE("laplacian on single modes") {
    auto g = make_grid(1, 64, 2.0 * kPi);
    ComplexField u = mode_field(g, 1);
    ComplexField lap = laplacian(u);
    ComplexField expect = u;
    for (auto& v : expect.values) v = -v;
    CHECK(rel_linf_diff(lap, expect) < 1e-12);

    ComplexField c = make_field(g, cplx(2.5, -1.0));
    CHECK(norm_linf(laplacian(c)) < 1e-12);

    // sin(2x) -> -4 sin(2x)
    ComplexField s = make_field(g);
    for (int i = 0; i < g->n; ++i)
        s.values[std::size_t(i)] = std::sin(2.0 * g->coord(i));
    ComplexField lap_s = laplacian(s);
    double err = 0.0;
    for (int i = 0; i < g->n; ++i)
        err = std::max(err, std::abs(lap_s.values[std::size_t(i)] -
                                     cplx(-4.0 * std::sin(2.0 * g->coord(i)), 0.0)));
    CHECK(err < 1e-12);
}

TEST_CASE("gradient on single modes") {
    auto g = make_grid(1, 64, 2.0 * kPi);
    ComplexField u = mode_field(g, 1);
    auto grads = gradient(u);
    REQUIRE(grads.size() == 1);
    ComplexField expect = u;
    for (auto& v : expect.values) v *= cplx(0.0, 1.0);
    CHECK(rel_linf_diff(grads[0], expect) < 1e-12);

    ComplexField one = make_field(g, cplx(1.0, 0.0));
    CHECK(norm_linf(gradient(one)[0]) < 1e-13);

    auto g2 = make_grid(2, 32, 2.0 * kPi);
    ComplexField v = mode_field(g2, 1, 2);
    auto grads2 = gradient(v);
    REQUIRE(grads2.size() == 2);
    ComplexField ex = v, ey = v;
    for (auto& w : ex.values) w *= cplx(0.0, 1.0);
    for (auto& w : ey.values) w *= cplx(0.0, 2.0);
    CHECK(rel_linf_diff(grads2[0], ex) < 1e-12);
    CHECK(rel_linf_diff(grads2[1], ey) < 1e-12);
}

TEST_CASE("laplacian equals divergence of gradient") {
    for (int dim : {1, 2}) {
        for (unsigned seed = 0; seed < 5; ++seed) {
            auto g = make_grid(dim, 32, 5.0);
            ComplexField u = oracles::random_band_limited(g, 100 + seed, 6, 0.5);
            ComplexField lap = laplacian(u);
            auto grads = gradient(u);
            ComplexField div = make_field(g);
            for (int a = 0; a < dim; ++a) {
                auto dd = gradient(grads[std::size_t(a)]);
                for (std::size_t i = 0; i < div.values.size(); ++i)
                    div.values[i] += dd[std::size_t(a)].values[i];
            }
            CHECK(rel_linf_diff(div, lap) < 1e-10);
        }
    }
}

TEST_CASE("norms on constants") {
    auto g = make_grid(1, 32, 12.0);
    NormReport r = norms(make_field(g, cplx(1.0, 0.0)), 3);
    CHECK(r.linf == doctest::Approx(1.0));
    CHECK(r.grad_l2 < 1e-13);
    CHECK(r.lap_l2 < 1e-12);
    for (int k = 1; k <= 3; ++k)
        CHECK(r.zhidkov.at(k) == doctest::Approx(1.0).epsilon(1e-12));

    NormReport z = norms(make_field(g, cplx(0.0, 0.0)), 2);
    CHECK(z.linf == 0.0);
    CHECK(z.l2 == 0.0);
    CHECK(z.l4 == 0.0);
    CHECK(z.fourier_l1 == 0.0);
    CHECK(z.grad_l2 == 0.0);
}

TEST_CASE("dark soliton pair gradient norm vs quadrature oracle") {
    // per-soliton integral of (d/dx tanh(x/sqrt2))^2 = int sech^4(x/sqrt2)/2 dx
    double per_soliton = oracles::adaptive_quad(
        [](double x) {
            double s = 1.0 / std::cosh(x / kSqrt2);
            return 0.5 * s * s * s * s;
        },
        -40.0, 40.0);
    CHECK(per_soliton == doctest::Approx(2.0 * kSqrt2 / 3.0).epsilon(1e-10));

    auto g = make_grid(1, 2048, 100.0);
    ComplexField u = make_field(g);
    for (int i = 0; i < g->n; ++i) {
        double x = g->coord(i);
        u.values[std::size_t(i)] =
            std::tanh((x - 25.0) / kSqrt2) * std::tanh((x - 75.0) / kSqrt2);
    }
    NormReport r = norms(u, 2);
    CHECK(r.grad_l2 * r.grad_l2 == doctest::Approx(2.0 * per_soliton).epsilon(1e-6));
    CHECK(r.zhidkov.at(1) == doctest::Approx(r.linf + r.grad_l2).epsilon(1e-14));
    CHECK(r.grad_sobolev.at(0) == doctest::Approx(r.grad_l2).epsilon(1e-14));
}

TEST_CASE("parseval") {
    for (unsigned seed = 0; seed < 100; ++seed) {
        auto g = make_grid(seed % 2 ? 2 : 1, 16, 3.0 + double(seed % 7));
        ComplexField u = oracles::random_band_limited(g, 1000 + seed, 4, 0.7);
        auto hat = spectrum(u);
        double spec = 0.0;
        for (const auto& v : hat) spec += std::norm(v);
        double dkD = std::pow(g->dk(), g->dim);
        double twopiD = std::pow(2.0 * kPi, g->dim);
        double l2 = norm_l2(u);
        CHECK(spec * dkD / twopiD ==
              doctest::Approx(l2 * l2).epsilon(1e-12));
    }
}

TEST_CASE("norm homogeneity and zhidkov triangle inequality") {
    auto g = make_grid(1, 64, 9.0);
    ComplexField u = oracles::random_band_limited(g, 7, 8, 0.3);
    double alpha = 3.7;
    ComplexField au = u;
    for (auto& v : au.values) v *= alpha;
    NormReport ru = norms(u, 2), rau = norms(au, 2);
    CHECK(rau.l2 == doctest::Approx(alpha * ru.l2).epsilon(1e-14));
    CHECK(rau.l4 == doctest::Approx(alpha * ru.l4).epsilon(1e-14));
    CHECK(rau.grad_l2 == doctest::Approx(alpha * ru.grad_l2).epsilon(1e-14));
    CHECK(rau.lap_l2 == doctest::Approx(alpha * ru.lap_l2).epsilon(1e-14));

    for (unsigned seed = 0; seed < 20; ++seed) {
        ComplexField a = oracles::random_band_limited(g, 200 + seed, 8, 0.4);
        ComplexField b = oracles::random_band_limited(g, 300 + seed, 8, 0.4);
        ComplexField s = a;
        for (std::size_t i = 0; i < s.values.size(); ++i)
            s.values[i] += b.values[i];
        for (int k : {1, 2}) {
            double lhs = norms(s, k).zhidkov.at(k);
            double rhs = norms(a, k).zhidkov.at(k) + norms(b, k).zhidkov.at(k);
            CHECK(lhs <= rhs + 1e-12);
        }
    }
}

TEST_CASE("nan input rejected") {
    auto g = make_grid(1, 16, 1.0);
    ComplexField u = make_field(g, cplx(1.0, 0.0));
    u.values[3] = cplx(std::nan(""), 0.0);
    CHECK_THROWS(laplacian(u));
    CHECK_THROWS(gradient(u));
    CHECK_THROWS(norms(u, 1));
}

TEST_CASE("dealias zeroes the upper third") {
    auto g = make_grid(1, 32, 2.0 * kPi);
    ComplexField lo = mode_field(g, 3);
    ComplexField hi = mode_field(g, 14);
    ComplexField u = lo;
    for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] += hi.values[i];
    ComplexField d = dealias(u);
    CHECK(rel_linf_diff(d, lo) < 1e-12);
}
