#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

#include "mhd2d/field.hpp"

namespace mhd2d {

enum class Axis { x, y };

namespace detail {

// (i*k)^order as a complex factor. Odd orders at the Nyquist index are not
// representable for a real field (the mode is self-conjugate), so callers
// zero them; see derivative().
inline std::complex<double> ik_pow(double k, int order) {
  switch (order & 3) {
    case 0: return {std::pow(k, order), 0.0};
    case 1: return {0.0, std::pow(k, order)};
    case 2: return {-std::pow(k, order), 0.0};
    default: return {0.0, -std::pow(k, order)};
  }
}

}  // namespace detail

/// Exact spectral derivative: coefficient-wise multiplication by (i k)^order.
/// Odd-order derivatives zero the Nyquist line along the chosen axis.
inline SpectralField derivative(const SpectralField& f, Axis axis, int order) {
  if (order < 1 || order > 4)
    throw std::invalid_argument("derivative: order must be in 1..4");
  const Grid& g = f.grid;
  SpectralField out(g);
  const int nx = g.nx(), nyh = g.nyh();
  const bool odd = (order % 2) != 0;
  if (axis == Axis::x) {
    for (int i = 0; i < nx; ++i) {
      std::complex<double> m = detail::ik_pow(g.kx()[i], order);
      if (odd && i == nx / 2) m = 0.0;
      for (int jh = 0; jh < nyh; ++jh)
        out.c[g.spec_index(i, jh)] = m * f.c[g.spec_index(i, jh)];
    }
  } else {
    for (int jh = 0; jh < nyh; ++jh) {
      std::complex<double> m = detail::ik_pow(g.ky()[jh], order);
      if (odd && jh == g.ny() / 2) m = 0.0;
      for (int i = 0; i < nx; ++i)
        out.c[g.spec_index(i, jh)] = m * f.c[g.spec_index(i, jh)];
    }
  }
  return out;
}

/// Zero every mode outside the 2/3-rule mask; retained modes are unchanged.
inline SpectralField dealias(const SpectralField& f) {
  SpectralField out(f.grid);
  const auto& mask = f.grid.dealias_mask();
  for (std::size_t m = 0; m < f.c.size(); ++m) out.c[m] = mask[m] ? f.c[m] : 0.0;
  return out;
}

inline void dealias_in_place(SpectralField& f) {
  const auto& mask = f.grid.dealias_mask();
  for (std::size_t m = 0; m < f.c.size(); ++m)
    if (!mask[m]) f.c[m] = 0.0;
}

/// Mean-zero streamfunction psi with Laplacian(psi) = rhs.
inline SpectralField invert_laplacian(const SpectralField& rhs) {
  const Grid& g = rhs.grid;
  SpectralField psi(g);
  const int nx = g.nx(), nyh = g.nyh();
  for (int i = 0; i < nx; ++i) {
    const double kx2 = g.kx()[i] * g.kx()[i];
    for (int jh = 0; jh < nyh; ++jh) {
      const double k2 = kx2 + g.ky()[jh] * g.ky()[jh];
      const std::size_t m = g.spec_index(i, jh);
      psi.c[m] = (k2 > 0.0) ? -rhs.c[m] / k2 : 0.0;
    }
  }
  return psi;
}

/// Divergence-free vector field whose scalar curl is `scalar_curl`:
/// v = perp-grad(psi) + mean_vector with Laplacian(psi) = scalar_curl.
/// The input must be mean-zero (the Laplacian is not invertible on k=0).
inline std::pair<SpectralField, SpectralField> biot_savart(
    const SpectralField& scalar_curl, double mean_x = 0.0, double mean_y = 0.0) {
  const Grid& g = scalar_curl.grid;
  double cmax = 0.0;
  for (const auto& z : scalar_curl.c) cmax = std::max(cmax, std::abs(z));
  if (std::abs(scalar_curl.mean_mode()) > 1e-12 * std::max(1.0, cmax))
    throw std::invalid_argument("biot_savart: input has a nonzero mean mode");

  SpectralField vx(g), vy(g);
  const int nx = g.nx(), nyh = g.nyh();
  const std::complex<double> I{0.0, 1.0};
  for (int i = 0; i < nx; ++i) {
    const double kx = g.kx()[i];
    for (int jh = 0; jh < nyh; ++jh) {
      const double ky = g.ky()[jh];
      const double k2 = kx * kx + ky * ky;
      const std::size_t m = g.spec_index(i, jh);
      if (k2 == 0.0 || i == nx / 2 || jh == g.ny() / 2) {
        vx.c[m] = vy.c[m] = 0.0;
        continue;
      }
      const std::complex<double> psi = -scalar_curl.c[m] / k2;
      vx.c[m] = -I * ky * psi;
      vy.c[m] = I * kx * psi;
    }
  }
  vx.c[0] = mean_x;
  vy.c[0] = mean_y;
  return {std::move(vx), std::move(vy)};
}

/// L^p norm by equal-weight collocation quadrature; p = inf gives max|f|.
/// Exact for p = 2 on band-limited fields (Parseval).
inline double lp_norm(const RealField& f, double p) {
  if (!(p >= 1.0))
    throw std::invalid_argument("lp_norm: p must satisfy p >= 1");
  if (std::isinf(p)) return f.max_abs();
  const double w = f.grid.cell_area();
  if (p == 2.0) {
    double s = 0.0;
    for (double x : f.v) s += x * x;
    return std::sqrt(w * s);
  }
  // Scale by the max so huge p does not overflow.
  const double m = f.max_abs();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : f.v) s += std::pow(std::abs(x) / m, p);
  return m * std::pow(w * s, 1.0 / p);
}

/// L2 norm straight from coefficients (Parseval).
inline double l2_norm(const SpectralField& f) {
  const Grid& g = f.grid;
  double s = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int jh = 0; jh < g.nyh(); ++jh)
      s += g.mode_weight(jh) * std::norm(f.c[g.spec_index(i, jh)]);
  return std::sqrt(g.area() * s);
}

/// L2 norm of the gradient, straight from coefficients.
inline double grad_l2_norm(const SpectralField& f) {
  const Grid& g = f.grid;
  double s = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double kx2 = g.kx()[i] * g.kx()[i];
    for (int jh = 0; jh < g.nyh(); ++jh) {
      const double k2 = kx2 + g.ky()[jh] * g.ky()[jh];
      s += g.mode_weight(jh) * k2 * std::norm(f.c[g.spec_index(i, jh)]);
    }
  }
  return std::sqrt(g.area() * s);
}

/// Sobolev H^s norm, normalized so s = 0 coincides with the L2 norm.
inline double hs_norm(const SpectralField& f, double s) {
  if (!(s >= 0.0) || s > 4.0)
    throw std::invalid_argument("hs_norm: s must be in [0, 4]");
  const Grid& g = f.grid;
  double acc = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double kx2 = g.kx()[i] * g.kx()[i];
    for (int jh = 0; jh < g.nyh(); ++jh) {
      const double k2 = kx2 + g.ky()[jh] * g.ky()[jh];
      acc += g.mode_weight(jh) * std::pow(1.0 + k2, s) *
             std::norm(f.c[g.spec_index(i, jh)]);
    }
  }
  return std::sqrt(g.area() * acc);
}

/// Galerkin L2 inner product of two coefficient-space fields.
inline double inner_product(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid;
  double s = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    for (int jh = 0; jh < g.nyh(); ++jh) {
      const std::size_t m = g.spec_index(i, jh);
      s += g.mode_weight(jh) * (a.c[m] * std::conj(b.c[m])).real();
    }
  return g.area() * s;
}

}  // namespace mhd2d
