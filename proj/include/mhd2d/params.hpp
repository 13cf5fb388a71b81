#pragma once

#include <stdexcept>
#include <string>

namespace mhd2d {

/// Dissipation tuple (nu1, nu2, eta1, eta2) plus the regularization strength
/// epsilon. nu1/nu2 act on the velocity along x/y, eta1/eta2 on the magnetic
/// field along x/y; epsilon adds a full Laplacian to both equations.
struct MhdParams {
  double nu1 = 0.0, nu2 = 0.0, eta1 = 0.0, eta2 = 0.0;
  double epsilon = 0.0;

  static MhdParams mixed_case_A(double nu, double eta) { return {0.0, nu, eta, 0.0, 0.0}; }
  static MhdParams mixed_case_B(double nu, double eta) { return {nu, 0.0, 0.0, eta, 0.0}; }
  static MhdParams magnetic_only(double eta) { return {0.0, 0.0, eta, eta, 0.0}; }
  static MhdParams ideal() { return {0.0, 0.0, 0.0, 0.0, 0.0}; }

  void validate() const {
    if (nu1 < 0 || nu2 < 0 || eta1 < 0 || eta2 < 0 || epsilon < 0)
      throw std::invalid_argument("MhdParams: coefficients must be nonnegative");
  }

  bool is_mixed_case_A() const { return nu1 == 0 && nu2 > 0 && eta1 > 0 && eta2 == 0; }
  bool is_mixed_case_B() const { return nu1 > 0 && nu2 == 0 && eta1 == 0 && eta2 > 0; }
  bool is_magnetic_only() const { return nu1 == 0 && nu2 == 0 && eta1 > 0 && eta1 == eta2; }
  bool is_ideal() const { return nu1 == 0 && nu2 == 0 && eta1 == 0 && eta2 == 0; }
};

inline MhdParams params_from_preset(const std::string& name, double nu, double eta) {
  if (name == "mixed_case_A") return MhdParams::mixed_case_A(nu, eta);
  if (name == "mixed_case_B") return MhdParams::mixed_case_B(nu, eta);
  if (name == "magnetic_only") return MhdParams::magnetic_only(eta);
  if (name == "ideal") return MhdParams::ideal();
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace mhd2d
