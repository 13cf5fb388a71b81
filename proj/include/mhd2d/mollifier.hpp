#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>
#include <stdexcept>

#include "mhd2d/field.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

/// Standard bump exp(-1/(1-r^2)) on the unit disk, zero outside.
inline double standard_bump(double r) {
  return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
}

/// Smooth nonnegative mollifier of width epsilon: the radial profile lives
/// on the unit disk and is rescaled by epsilon; unit mass is enforced by
/// normalizing the discrete quadrature of the sampled kernel.
struct MollifierSpec {
  double epsilon = 0.1;
  std::function<double(double)> profile = standard_bump;
};

/// Fourier multiplier of periodic convolution with the scaled kernel.
///
/// Periodizing the kernel on the torus is the same as sampling its plane
/// transform on the wavenumber lattice (Poisson summation), so the
/// multiplier is the radial transform of the profile,
/// m(k) = int_0^1 profile(r) J0(|k| eps r) r dr / int_0^1 profile(r) r dr,
/// evaluated by trapezoid quadrature (the integrand is smooth and flat at
/// both ends). m(0) = 1 exactly and |m| <= 1, so the convolution keeps the
/// mean and never increases the L2 norm, for any eps > 0 regardless of the
/// grid spacing.
inline SpectralField mollifier_multiplier(const Grid& g, const MollifierSpec& spec) {
  if (!(spec.epsilon > 0.0))
    throw std::invalid_argument("mollifier: epsilon must be positive");
  if (!(spec.epsilon < 0.5 * std::min(g.lx(), g.ly())))
    throw std::invalid_argument("mollifier: epsilon too large for the torus");

  constexpr int quad_n = 512;
  std::vector<double> radius(quad_n), weight(quad_n);
  double mass = 0.0;
  for (int q = 0; q < quad_n; ++q) {
    const double r = (q + 0.5) / quad_n;
    const double val = spec.profile(r);
    if (val < 0.0) throw std::invalid_argument("mollifier: profile must be >= 0");
    radius[q] = r;
    weight[q] = val * r / quad_n;
    mass += weight[q];
  }
  if (!(mass > 0.0)) throw std::invalid_argument("mollifier: profile has zero mass");

  // Radial values reused across modes with the same |k|.
  std::map<double, double> cache;
  const auto radial = [&](double kabs) {
    const auto it = cache.find(kabs);
    if (it != cache.end()) return it->second;
    double s = 0.0;
    for (int q = 0; q < quad_n; ++q)
      s += weight[q] * std::cyl_bessel_j(0.0, kabs * spec.epsilon * radius[q]);
    double m = s / mass;
    if (std::abs(m) > 1.0) m /= std::abs(m);
    cache.emplace(kabs, m);
    return m;
  };

  SpectralField mult(g);
  for (int i = 0; i < g.nx(); ++i) {
    const double kx = g.kx()[i];
    for (int jh = 0; jh < g.nyh(); ++jh) {
      const double ky = g.ky()[jh];
      mult.at(i, jh) = radial(std::hypot(kx, ky));
    }
  }
  mult.c[0] = {1.0, 0.0};
  return mult;
}

inline SpectralField mollify_spectral(const SpectralField& f, const MollifierSpec& spec) {
  SpectralField mult = mollifier_multiplier(f.grid, spec);
  SpectralField out(f.grid);
  for (std::size_t m = 0; m < f.c.size(); ++m) out.c[m] = f.c[m] * mult.c[m];
  return out;
}

/// Periodic convolution with the scaled profile: smooths the field, keeps
/// the mean exactly, and never increases the L2 norm.
inline RealField mollify(const RealField& f, const MollifierSpec& spec) {
  return to_real(mollify_spectral(transform(f), spec));
}

}  // namespace mhd2d
