#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "mhd2d/grid.hpp"

namespace mhd2d {

/// Scalar field in collocation (grid point) representation, row-major with
/// the x index outermost: values[i*ny + j] = f(x_i, y_j).
struct RealField {
  Grid grid;
  std::vector<double> v;

  RealField() = default;
  explicit RealField(Grid g) : grid(std::move(g)), v(grid.real_size(), 0.0) {}

  double& operator()(int i, int j) { return v[grid.real_index(i, j)]; }
  double operator()(int i, int j) const { return v[grid.real_index(i, j)]; }

  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  bool finite() const {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  }
  double mean() const {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  }
};

/// Scalar field in coefficient representation (half spectrum, ky >= 0).
/// c[i*nyh + jh] is the Fourier coefficient of mode (kx_int(i), jh); modes
/// with negative ky are the conjugates of their mirrored counterparts, so
/// the inverse transform is real by construction.
struct SpectralField {
  Grid grid;
  std::vector<std::complex<double>> c;

  SpectralField() = default;
  explicit SpectralField(Grid g) : grid(std::move(g)), c(grid.spec_size()) {}

  std::complex<double>& at(int i, int jh) { return c[grid.spec_index(i, jh)]; }
  const std::complex<double>& at(int i, int jh) const {
    return c[grid.spec_index(i, jh)];
  }

  /// Coefficient for an arbitrary signed mode pair, materializing the
  /// conjugate half as needed. Out-of-range modes are zero.
  std::complex<double> coefficient(int ki, int kj) const {
    const int nx = grid.nx(), ny = grid.ny();
    if (ki < -nx / 2 || ki > nx / 2 || kj < -ny / 2 || kj > ny / 2) return {0.0, 0.0};
    if (kj >= 0) {
      const int i = ki >= 0 ? ki : ki + nx;
      return at(i == nx ? 0 : i, kj);
    }
    const int i = -ki >= 0 ? -ki : -ki + nx;
    return std::conj(at(i == nx ? 0 : i, -kj));
  }

  std::complex<double> mean_mode() const { return c[0]; }
  void set_mean_zero() { c[0] = {0.0, 0.0}; }

  bool finite() const {
    for (const auto& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }
};

/// Forward transform; the k=0 coefficient equals the field average.
inline SpectralField transform(const RealField& f) {
  SpectralField out(f.grid);
  f.grid.fft().forward(f.v.data(), out.c.data());
  return out;
}

/// Inverse transform (coefficients preserved; an internal scratch copy is
/// consumed by the c2r plan).
inline RealField to_real(const SpectralField& f) {
  RealField out(f.grid);
  std::vector<std::complex<double>> scratch(f.c);
  f.grid.fft().inverse(scratch.data(), out.v.data());
  return out;
}

}  // namespace mhd2d
