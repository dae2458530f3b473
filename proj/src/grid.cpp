#include "gpv/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace gpv {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::size_t Grid::size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
    return s;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= dx;
    return v;
}

double Grid::dk() const { return 2.0 * kPi / length; }

double Grid::k2(std::size_t idx) const {
    if (dim == 1) {
        double k = wavenumbers[idx];
        return k * k;
    }
    std::size_t nn = static_cast<std::size_t>(n);
    double kx = wavenumbers[idx / nn];
    double ky = wavenumbers[idx % nn];
    return kx * kx + ky * ky;
}

GridPtr make_grid(int dim, int points_per_axis, double length_per_axis) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("make_grid: dim must be 1 or 2");
    if (!is_power_of_two(points_per_axis) || points_per_axis < 8)
        throw std::invalid_argument("make_grid: N must be a power of two >= 8");
    if (!(length_per_axis > 0.0) || !std::isfinite(length_per_axis))
        throw std::invalid_argument("make_grid: L must be positive");

    auto g = std::make_shared<Grid>();
    g->dim = dim;
    g->n = points_per_axis;
    g->length = length_per_axis;
    g->dx = length_per_axis / points_per_axis;
    g->wavenumbers.resize(points_per_axis);
    for (int m = 0; m < points_per_axis; ++m) {
        int mm = (m <= points_per_axis / 2 - 1) ? m : m - points_per_axis;
        g->wavenumbers[m] = 2.0 * kPi * mm / length_per_axis;
    }
    return g;
}

ComplexField make_field(GridPtr grid, cplx fill) {
    ComplexField f;
    f.grid = std::move(grid);
    f.values.assign(f.grid->size(), fill);
    return f;
}

void require_finite(const ComplexField& u, const char* what) {
    for (const cplx& v : u.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error(std::string("non-finite value in ") + what);
    }
}

bool same_grid(const ComplexField& a, const ComplexField& b) {
    const Grid& ga = a.g();
    const Grid& gb = b.g();
    return ga.dim == gb.dim && ga.n == gb.n && ga.length == gb.length;
}

// ---------------------------------------------------------------------------
// FFT plan cache. Plans are created with FFTW_UNALIGNED so they can be
// executed on any array via fftw_execute_dft.

namespace {

struct PlanKey {
    int dim, n, sign;
    bool operator==(const PlanKey& o) const {
        return dim == o.dim && n == o.n && sign == o.sign;
    }
};

struct PlanKeyHash {
    std::size_t operator()(const PlanKey& k) const {
        return std::hash<std::int64_t>()((std::int64_t(k.dim) << 40) ^
                                         (std::int64_t(k.n) << 8) ^
                                         (k.sign & 0xff));
    }
};

std::mutex plan_mutex;
std::unordered_map<PlanKey, fftw_plan, PlanKeyHash> plan_cache;

fftw_plan get_plan(const Grid& g, int sign) {
    PlanKey key{g.dim, g.n, sign};
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;

    std::vector<cplx> a(g.size()), b(g.size());
    auto* in = reinterpret_cast<fftw_complex*>(a.data());
    auto* out = reinterpret_cast<fftw_complex*>(b.data());
    fftw_plan p;
    if (g.dim == 1)
        p = fftw_plan_dft_1d(g.n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    else
        p = fftw_plan_dft_2d(g.n, g.n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_cache.emplace(key, p);
    return p;
}

}  // namespace

void dft(const Grid& g, const cplx* in, cplx* out, int sign) {
    fftw_plan p = get_plan(g, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

std::vector<cplx> spectrum(const ComplexField& u) {
    std::vector<cplx> out(u.values.size());
    dft(u.g(), u.values.data(), out.data(), FFTW_FORWARD);
    const double scale = u.g().cell_volume();
    for (cplx& v : out) v *= scale;
    return out;
}

ComplexField from_spectrum(GridPtr grid, const std::vector<cplx>& uhat) {
    ComplexField f;
    f.grid = std::move(grid);
    f.values.resize(uhat.size());
    dft(*f.grid, uhat.data(), f.values.data(), FFTW_BACKWARD);
    // inverse of the dx^D forward scaling plus the FFTW N^D factor
    const double scale = 1.0 / (f.grid->cell_volume() * double(f.grid->size()));
    for (cplx& v : f.values) v *= scale;
    return f;
}

namespace {

// Apply a spectral multiplier: out = ifft(mult(idx) * fft(u)), with the
// unnormalized transforms (the 1/N^D factor is folded into the loop).
template <class Mult>
ComplexField spectral_apply(const ComplexField& u, Mult mult) {
    const Grid& g = u.g();
    std::vector<cplx> work(u.values.size());
    dft(g, u.values.data(), work.data(), FFTW_FORWARD);
    const double inv_n = 1.0 / double(g.size());
    for (std::size_t i = 0; i < work.size(); ++i) work[i] *= mult(i) * inv_n;
    ComplexField out;
    out.grid = u.grid;
    out.values.resize(work.size());
    dft(g, work.data(), out.values.data(), FFTW_BACKWARD);
    return out;
}

}  // namespace

ComplexField laplacian(const ComplexField& u) {
    require_finite(u, "laplacian input");
    const Grid& g = u.g();
    return spectral_apply(u, [&g](std::size_t i) { return cplx(-g.k2(i), 0.0); });
}

std::vector<ComplexField> gradient(const ComplexField& u) {
    require_finite(u, "gradient input");
    const Grid& g = u.g();
    std::vector<ComplexField> out;
    out.reserve(g.dim);
    if (g.dim == 1) {
        out.push_back(spectral_apply(
            u, [&g](std::size_t i) { return cplx(0.0, g.wavenumbers[i]); }));
    } else {
        std::size_t n = static_cast<std::size_t>(g.n);
        out.push_back(spectral_apply(
            u, [&g, n](std::size_t i) { return cplx(0.0, g.wavenumbers[i / n]); }));
        out.push_back(spectral_apply(
            u, [&g, n](std::size_t i) { return cplx(0.0, g.wavenumbers[i % n]); }));
    }
    return out;
}

ComplexField dealias(const ComplexField& u) {
    const Grid& g = u.g();
    const double kcut = g.dk() * (g.n / 3.0);
    const double tol = 1e-12 * g.dk();
    std::size_t n = static_cast<std::size_t>(g.n);
    return spectral_apply(u, [&](std::size_t i) {
        double kx, ky = 0.0;
        if (g.dim == 1) {
            kx = g.wavenumbers[i];
        } else {
            kx = g.wavenumbers[i / n];
            ky = g.wavenumbers[i % n];
        }
        bool keep = std::abs(kx) <= kcut + tol && std::abs(ky) <= kcut + tol;
        return cplx(keep ? 1.0 : 0.0, 0.0);
    });
}

double norm_linf(const ComplexField& u) {
    double m = 0.0;
    for (const cplx& v : u.values) m = std::max(m, std::abs(v));
    return m;
}

double norm_l2(const ComplexField& u) {
    double s = 0.0;
    for (const cplx& v : u.values) s += std::norm(v);
    return std::sqrt(s * u.g().cell_volume());
}

NormReport norms(const ComplexField& u, int max_k) {
    require_finite(u, "norms input");
    if (max_k < 1) throw std::invalid_argument("norms: max_k must be >= 1");
    const Grid& g = u.g();

    NormReport r;
    double s2 = 0.0, s4 = 0.0;
    for (const cplx& v : u.values) {
        double a2 = std::norm(v);
        r.linf = std::max(r.linf, std::sqrt(a2));
        s2 += a2;
        s4 += a2 * a2;
    }
    const double vol_cell = g.cell_volume();
    r.l2 = std::sqrt(s2 * vol_cell);
    r.l4 = std::pow(s4 * vol_cell, 0.25);

    // spectral side
    std::vector<cplx> uhat(u.values.size());
    dft(g, u.values.data(), uhat.data(), FFTW_FORWARD);
    const double scale = vol_cell;  // to uhat convention
    // Parseval normalization: sum over k of |uhat|^2 dk^D / (2pi)^D equals
    // sum_x |u|^2 dx^D; with uhat = scale*DFT this constant is:
    double dkD = 1.0, twopiD = 1.0;
    for (int d = 0; d < g.dim; ++d) {
        dkD *= g.dk();
        twopiD *= 2.0 * kPi;
    }
    const double parseval = dkD / twopiD;

    double l1 = 0.0, grad2 = 0.0, lap2 = 0.0;
    std::vector<double> hs(std::size_t(max_k), 0.0);  // ||grad u||_{H^s}^2, s=0..max_k-1
    for (std::size_t i = 0; i < uhat.size(); ++i) {
        double a2 = std::norm(uhat[i]) * scale * scale;
        double kk = g.k2(i);
        l1 += std::sqrt(a2);
        grad2 += kk * a2;
        lap2 += kk * kk * a2;
        double w = kk * a2;
        for (int s = 0; s < max_k; ++s) {
            hs[std::size_t(s)] += w;
            w *= (1.0 + kk);
        }
    }
    r.fourier_l1 = l1 * dkD;
    r.grad_l2 = std::sqrt(grad2 * parseval);
    r.lap_l2 = std::sqrt(lap2 * parseval);
    for (int s = 0; s < max_k; ++s)
        r.grad_sobolev[s] = std::sqrt(hs[std::size_t(s)] * parseval);
    for (int k = 1; k <= max_k; ++k)
        r.zhidkov[k] = r.linf + r.grad_sobolev[k - 1];
    return r;
}

}  // namespace gpv
