#pragma once

#include <cmath>
#include <stdexcept>

#include "mhd2d/params.hpp"
#include "mhd2d/state.hpp"

namespace mhd2d {

enum class ReferenceKind { taylor_green, magnetic_decay };

/// Exact single-mode solutions of the full system, used as solver oracles.
///
/// taylor_green: omega(t) = 2 sin(k1 x) sin(k1 y) exp(-(nu1+nu2+2 eps) k1^2 t)
/// with b = 0 (u.grad(omega) vanishes identically, so only diffusion acts).
/// magnetic_decay: b(t) = (sin(k1 y), 0) exp(-(eta2+eps) k1^2 t) with u = 0,
/// i.e. j(t) = -cos(k1 y) exp(-(eta2+eps) k1^2 t). k1 = 2 pi / L.
inline MhdState analytic_reference(ReferenceKind kind, const MhdParams& params,
                                   double t, const Grid& grid) {
  MhdState s(grid);
  s.t = t;
  if (kind == ReferenceKind::taylor_green) {
    const double kx1 = two_pi / grid.lx(), ky1 = two_pi / grid.ly();
    const double rate = params.nu1 * kx1 * kx1 + params.nu2 * ky1 * ky1 +
                        params.epsilon * (kx1 * kx1 + ky1 * ky1);
    const double amp = std::exp(-rate * t);
    s.omega_hat.at(1, 1) = {-0.5 * amp, 0.0};
    s.omega_hat.at(grid.nx() - 1, 1) = {0.5 * amp, 0.0};
  } else {
    const double ky1 = two_pi / grid.ly();
    const double rate = (params.eta2 + params.epsilon) * ky1 * ky1;
    const double amp = std::exp(-rate * t);
    s.j_hat.at(0, 1) = {-0.5 * amp, 0.0};
  }
  return s;
}

}  // namespace mhd2d
