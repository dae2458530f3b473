#pragma once

#include <complex>
#include <map>
#include <memory>
#include <vector>

// Periodic pseudo-spectral grid in D = 1 or 2 dimensions, complex lattice
// fields and the norm machinery built on them.
//
// Fourier convention used throughout:
//   uhat(k) = sum_x u(x) e^{-i k.x} dx^D        (forward)
//   u(x)    = (2pi)^{-D} sum_k uhat(k) e^{i k.x} dk^D   (inverse)
// with dk = 2pi/L, so Parseval reads
//   sum_x |u|^2 dx^D = (2pi)^{-D} sum_k |uhat|^2 dk^D
// and ||u||_inf <= (2pi)^{-D} sum_k |uhat| dk^D.

namespace gpv {

using cplx = std::complex<double>;

struct Grid {
    int dim = 1;          // D in {1,2}
    int n = 0;            // points per axis, power of two
    double length = 0.0;  // L, same on all axes
    double dx = 0.0;      // L/n

    // Per-axis wavenumbers in FFT storage order: k[m] = 2pi*m'/L where
    // m' = m for m <= n/2-1 and m' = m-n for the upper half (so the
    // Nyquist index n/2 carries k = -pi*n/L).
    std::vector<double> wavenumbers;

    std::size_t size() const;          // n^dim
    double cell_volume() const;        // dx^dim
    double coord(int i) const { return i * dx; }
    double dk() const;                 // 2pi/L
    // |k|^2 at flattened index (row-major, axis 0 slowest for dim=2)
    double k2(std::size_t idx) const;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int dim, int points_per_axis, double length_per_axis);

struct ComplexField {
    GridPtr grid;
    std::vector<cplx> values;  // length n^dim, row-major

    const Grid& g() const { return *grid; }
};

ComplexField make_field(GridPtr grid, cplx fill = cplx(0.0, 0.0));

// Throws std::runtime_error if any value is NaN/Inf.
void require_finite(const ComplexField& u, const char* what = "field");

bool same_grid(const ComplexField& a, const ComplexField& b);

// Unnormalized DFT (FFTW sign convention: sign=-1 forward). Out-of-place.
void dft(const Grid& g, const cplx* in, cplx* out, int sign);

// Spectrum in the convention above: uhat = dft_forward(u) * dx^D.
std::vector<cplx> spectrum(const ComplexField& u);

// Inverse of spectrum().
ComplexField from_spectrum(GridPtr grid, const std::vector<cplx>& uhat);

ComplexField laplacian(const ComplexField& u);
std::vector<ComplexField> gradient(const ComplexField& u);

// Zero all modes with |k_axis| > (n/3)*dk on any axis (2/3-rule).
ComplexField dealias(const ComplexField& u);

struct NormReport {
    double linf = 0.0;
    double l2 = 0.0;
    double l4 = 0.0;
    double grad_l2 = 0.0;
    double lap_l2 = 0.0;
    double fourier_l1 = 0.0;               // sum_k |uhat| dk^D
    std::map<int, double> grad_sobolev;    // s -> ||grad u||_{H^s}
    std::map<int, double> zhidkov;         // k -> ||u||_{X^k} = linf + grad_sobolev[k-1]
};

NormReport norms(const ComplexField& u, int max_k = 2);

// L^p lattice norms (quadrature sum |u|^p dx^D).
double norm_linf(const ComplexField& u);
double norm_l2(const ComplexField& u);

}  // namespace gpv
