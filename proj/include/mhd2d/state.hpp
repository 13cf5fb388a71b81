#pragma once

#include <utility>

#include "mhd2d/field.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

/// Vorticity-current state. Both fields are mean-zero; the velocity and
/// magnetic fields are reconstructed on demand with zero mean, which keeps
/// them divergence-free by construction.
struct MhdState {
  SpectralField omega_hat;
  SpectralField j_hat;
  double t = 0.0;

  MhdState() = default;
  MhdState(SpectralField w, SpectralField j, double time = 0.0)
      : omega_hat(std::move(w)), j_hat(std::move(j)), t(time) {
    omega_hat.set_mean_zero();
    j_hat.set_mean_zero();
  }
  explicit MhdState(const Grid& g) : omega_hat(g), j_hat(g) {}

  const Grid& grid() const { return omega_hat.grid; }

  std::pair<SpectralField, SpectralField> velocity() const {
    return biot_savart(omega_hat);
  }
  std::pair<SpectralField, SpectralField> magnetic() const {
    return biot_savart(j_hat);
  }

  bool finite() const { return omega_hat.finite() && j_hat.finite(); }
};

}  // namespace mhd2d
