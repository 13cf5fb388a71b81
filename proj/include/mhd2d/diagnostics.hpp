#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhd2d/params.hpp"
#include "mhd2d/spectral.hpp"
#include "mhd2d/state.hpp"

namespace mhd2d {

/// Squared norms and quadratic functionals of one (omega, j) pair, all read
/// off the coefficients in a single fused pass. Velocity and magnetic
/// quantities use the zero-mean Biot-Savart weights |k|^-2.
struct FlowMoments {
  double u2 = 0, b2 = 0;                  // ||u||^2, ||b||^2
  double omega2 = 0, j2 = 0;              // ||omega||^2, ||j||^2
  double grad_omega2 = 0, grad_j2 = 0;    // ||grad omega||^2, ||grad j||^2
  double u_x2 = 0, u_y2 = 0, b_x2 = 0, b_y2 = 0;
  double omega_y2 = 0, j_x2 = 0;
  double grad_omega_y2 = 0, grad_j_x2 = 0;
  double grad_b2_indep = 0;  // ||grad b||^2 via components (equals j2 analytically)
  double cross_helicity = 0;  // integral of u . b
  double msq_potential = 0;   // integral of a^2 with Laplacian(a) = -j

  bool finite() const {
    return std::isfinite(omega2) && std::isfinite(j2) && std::isfinite(grad_omega2) &&
           std::isfinite(grad_j2) && std::isfinite(cross_helicity);
  }
};

inline FlowMoments flow_moments(const Grid& g, const std::complex<double>* wc,
                                const std::complex<double>* jc) {
  FlowMoments m;
  for (int i = 0; i < g.nx(); ++i) {
    const double kx = g.kx()[i], kx2 = kx * kx;
    for (int jh = 0; jh < g.nyh(); ++jh) {
      const double ky = g.ky()[jh], ky2 = ky * ky;
      const double k2 = kx2 + ky2;
      const std::size_t idx = g.spec_index(i, jh);
      const double wt = g.mode_weight(jh);
      const double nw = wt * std::norm(wc[idx]);
      const double nj = wt * std::norm(jc[idx]);
      m.omega2 += nw;
      m.j2 += nj;
      m.grad_omega2 += k2 * nw;
      m.grad_j2 += k2 * nj;
      m.omega_y2 += ky2 * nw;
      m.j_x2 += kx2 * nj;
      m.grad_omega_y2 += k2 * ky2 * nw;
      m.grad_j_x2 += k2 * kx2 * nj;
      if (k2 > 0.0) {
        m.u2 += nw / k2;
        m.b2 += nj / k2;
        m.u_x2 += kx2 / k2 * nw;
        m.u_y2 += ky2 / k2 * nw;
        m.b_x2 += kx2 / k2 * nj;
        m.b_y2 += ky2 / k2 * nj;
        m.grad_b2_indep += k2 * ((kx2 + ky2) / (k2 * k2) * nj);
        m.cross_helicity += wt * (wc[idx] * std::conj(jc[idx])).real() / k2;
        m.msq_potential += nj / (k2 * k2);
      }
    }
  }
  const double a = g.area();
  m.u2 *= a; m.b2 *= a; m.omega2 *= a; m.j2 *= a;
  m.grad_omega2 *= a; m.grad_j2 *= a;
  m.u_x2 *= a; m.u_y2 *= a; m.b_x2 *= a; m.b_y2 *= a;
  m.omega_y2 *= a; m.j_x2 *= a;
  m.grad_omega_y2 *= a; m.grad_j_x2 *= a;
  m.grad_b2_indep *= a;
  m.cross_helicity *= a; m.msq_potential *= a;
  return m;
}

inline FlowMoments flow_moments(const SpectralField& w, const SpectralField& j) {
  return flow_moments(w.grid, w.c.data(), j.c.data());
}

/// Time-integrated dissipation functionals, nondecreasing in t.
struct DissipationIntegrals {
  double u_x = 0, u_y = 0, b_x = 0, b_y = 0;
  double grad_u = 0, grad_b = 0;
  double omega_y = 0, j_x = 0;
  double grad_j = 0, grad_omega_y = 0, grad_j_x = 0;

  void add_scaled(double c, const FlowMoments& m) {
    u_x += c * m.u_x2;
    u_y += c * m.u_y2;
    b_x += c * m.b_x2;
    b_y += c * m.b_y2;
    grad_u += c * m.omega2;  // ||grad u|| = ||omega|| for mean-zero div-free u
    grad_b += c * m.j2;      // ||grad b|| = ||j||
    omega_y += c * m.omega_y2;
    j_x += c * m.j_x2;
    grad_j += c * m.grad_j2;
    grad_omega_y += c * m.grad_omega_y2;
    grad_j_x += c * m.grad_j_x2;
  }
};

struct DiagnosticsRecord {
  double t = 0;
  double l2_u = 0, l2_b = 0, l2_omega = 0, l2_j = 0;
  double l2_grad_omega = 0, l2_grad_j = 0;
  double l2_omega_y = 0, l2_j_x = 0;
  double l2_u_x = 0, l2_u_y = 0, l2_b_x = 0, l2_b_y = 0;
  double l2_grad_b = 0;
  double l2_grad_omega_y = 0, l2_grad_j_x = 0;
  double X = 0;  // ||omega||^2 + ||j||^2
  double cross_helicity = 0, msq_potential = 0;
  DissipationIntegrals accum;
  std::vector<double> grad_u_lp;  // ||grad u||_p along the series p-ladder

  bool finite() const {
    return std::isfinite(X) && std::isfinite(l2_grad_omega) && std::isfinite(l2_grad_j);
  }
};

struct DiagnosticsSeries {
  std::vector<DiagnosticsRecord> records;
  MhdParams params;
  int nx = 0, ny = 0;
  double Lx = 0, Ly = 0, dt = 0;
  std::vector<double> p_ladder;
  std::string preset;
  bool blow_up = false;
  std::string error;
};

/// Pointwise Frobenius magnitude of the gradient of the vector field whose
/// scalar curl is `curl` (zero-mean reconstruction).
inline RealField grad_magnitude_field(const SpectralField& curl) {
  const Grid& g = curl.grid;
  SpectralField scratch(g);
  RealField comp(g), mag2(g);
  // row 0: d_x u1 = -kx ky/k^2 w ; d_y u1 = -ky^2/k^2 w
  // row 1: d_x u2 =  kx^2/k^2 w ; d_y u2 =  kx ky/k^2 w
  const auto accumulate = [&](auto&& mult) {
    for (int i = 0; i < g.nx(); ++i) {
      const double kx = g.kx()[i];
      for (int jh = 0; jh < g.nyh(); ++jh) {
        const double ky = g.ky()[jh];
        const double k2 = kx * kx + ky * ky;
        const std::size_t m = g.spec_index(i, jh);
        scratch.c[m] = (k2 > 0.0 && i != g.nx() / 2 && jh != g.ny() / 2)
                           ? mult(kx, ky, k2) * curl.c[m]
                           : 0.0;
      }
    }
    g.fft().inverse(scratch.c.data(), comp.v.data());
    for (std::size_t m = 0; m < mag2.v.size(); ++m) mag2.v[m] += comp.v[m] * comp.v[m];
  };
  accumulate([](double kx, double ky, double k2) { return -kx * ky / k2; });
  accumulate([](double kx, double ky, double k2) { return -ky * ky / k2; });
  accumulate([](double kx, double ky, double k2) { return kx * kx / k2; });
  accumulate([](double kx, double ky, double k2) { return kx * ky / k2; });
  for (double& v : mag2.v) v = std::sqrt(v);
  return mag2;
}

inline DiagnosticsRecord make_record(const MhdState& s,
                                     const DissipationIntegrals& accum,
                                     const std::vector<double>& p_ladder) {
  const FlowMoments m = flow_moments(s.omega_hat, s.j_hat);
  DiagnosticsRecord r;
  r.t = s.t;
  r.l2_u = std::sqrt(m.u2);
  r.l2_b = std::sqrt(m.b2);
  r.l2_omega = std::sqrt(m.omega2);
  r.l2_j = std::sqrt(m.j2);
  r.l2_grad_omega = std::sqrt(m.grad_omega2);
  r.l2_grad_j = std::sqrt(m.grad_j2);
  r.l2_omega_y = std::sqrt(m.omega_y2);
  r.l2_j_x = std::sqrt(m.j_x2);
  r.l2_u_x = std::sqrt(m.u_x2);
  r.l2_u_y = std::sqrt(m.u_y2);
  r.l2_b_x = std::sqrt(m.b_x2);
  r.l2_b_y = std::sqrt(m.b_y2);
  r.l2_grad_b = std::sqrt(m.grad_b2_indep);
  r.l2_grad_omega_y = std::sqrt(m.grad_omega_y2);
  r.l2_grad_j_x = std::sqrt(m.grad_j_x2);
  r.X = m.omega2 + m.j2;
  r.cross_helicity = m.cross_helicity;
  r.msq_potential = m.msq_potential;
  r.accum = accum;
  if (!p_ladder.empty()) {
    RealField gm = grad_magnitude_field(s.omega_hat);
    r.grad_u_lp.reserve(p_ladder.size());
    for (double p : p_ladder) r.grad_u_lp.push_back(lp_norm(gm, p));
  }
  return r;
}

/// Snapshot of all monitored norms; accumulators advance trapezoidally from
/// `prev` (zero when absent).
inline DiagnosticsRecord record_state(const MhdState& s,
                                      const DiagnosticsRecord* prev = nullptr,
                                      const std::vector<double>& p_ladder = {}) {
  DiagnosticsRecord r = make_record(s, DissipationIntegrals{}, p_ladder);
  if (prev) {
    const double h = 0.5 * (s.t - prev->t);
    r.accum = prev->accum;
    r.accum.u_x += h * (prev->l2_u_x * prev->l2_u_x + r.l2_u_x * r.l2_u_x);
    r.accum.u_y += h * (prev->l2_u_y * prev->l2_u_y + r.l2_u_y * r.l2_u_y);
    r.accum.b_x += h * (prev->l2_b_x * prev->l2_b_x + r.l2_b_x * r.l2_b_x);
    r.accum.b_y += h * (prev->l2_b_y * prev->l2_b_y + r.l2_b_y * r.l2_b_y);
    r.accum.grad_u += h * (prev->l2_omega * prev->l2_omega + r.l2_omega * r.l2_omega);
    r.accum.grad_b += h * (prev->l2_j * prev->l2_j + r.l2_j * r.l2_j);
    r.accum.omega_y +=
        h * (prev->l2_omega_y * prev->l2_omega_y + r.l2_omega_y * r.l2_omega_y);
    r.accum.j_x += h * (prev->l2_j_x * prev->l2_j_x + r.l2_j_x * r.l2_j_x);
    r.accum.grad_j +=
        h * (prev->l2_grad_j * prev->l2_grad_j + r.l2_grad_j * r.l2_grad_j);
    r.accum.grad_omega_y += h * (prev->l2_grad_omega_y * prev->l2_grad_omega_y +
                                 r.l2_grad_omega_y * r.l2_grad_omega_y);
    r.accum.grad_j_x +=
        h * (prev->l2_grad_j_x * prev->l2_grad_j_x + r.l2_grad_j_x * r.l2_grad_j_x);
  }
  return r;
}

/// Max relative drift of E(t) + 2 * coefficient-weighted dissipation
/// integrals, which the energy identity keeps constant in the continuum.
inline double energy_budget_residual(const DiagnosticsSeries& series,
                                     const MhdParams& p) {
  if (series.records.empty())
    throw std::invalid_argument("energy_budget_residual: empty series");
  const auto lhs = [&](const DiagnosticsRecord& r) {
    return r.l2_u * r.l2_u + r.l2_b * r.l2_b + 2.0 * p.nu1 * r.accum.u_x +
           2.0 * p.nu2 * r.accum.u_y + 2.0 * p.eta1 * r.accum.b_x +
           2.0 * p.eta2 * r.accum.b_y +
           2.0 * p.epsilon * (r.accum.grad_u + r.accum.grad_b);
  };
  const double base = lhs(series.records.front());
  if (base <= 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& r : series.records)
    worst = std::max(worst, std::abs(lhs(r) - base) / base);
  return worst;
}

enum class BoundKind { prop21, prop22, prop33 };

/// Ratio of the monitored a priori bound at each record time. prop21/prop22
/// report the raw ratio (their constant is not explicit); prop33 divides by
/// the explicit Gronwall factor exp((16/eta) int ||j||^2), evaluated in log
/// space so large exponents cannot overflow.
inline std::vector<double> bound_monitor_series(const DiagnosticsSeries& series,
                                                BoundKind which) {
  if (series.records.empty())
    throw std::invalid_argument("bound_monitor: empty series");
  const MhdParams& p = series.params;
  const DiagnosticsRecord& r0 = series.records.front();
  std::vector<double> out;
  out.reserve(series.records.size());
  if (which == BoundKind::prop21 || which == BoundKind::prop22) {
    if (!p.is_mixed_case_A())
      throw std::invalid_argument("bound_monitor: prop21/prop22 need mixed_case_A");
    const double nu = p.nu2, eta = p.eta1;
    if (which == BoundKind::prop21) {
      const double X0 = r0.X;
      if (X0 <= 0.0) throw std::invalid_argument("bound_monitor: X(0) = 0, undefined ratio");
      for (const auto& r : series.records)
        out.push_back((r.X + nu * r.accum.omega_y + eta * r.accum.j_x) / X0);
    } else {
      const double Y0 = r0.l2_grad_omega * r0.l2_grad_omega + r0.l2_grad_j * r0.l2_grad_j;
      if (Y0 <= 0.0) throw std::invalid_argument("bound_monitor: Y(0) = 0, undefined ratio");
      for (const auto& r : series.records) {
        const double Y = r.l2_grad_omega * r.l2_grad_omega + r.l2_grad_j * r.l2_grad_j;
        out.push_back((Y + nu * r.accum.grad_omega_y + eta * r.accum.grad_j_x) / Y0);
      }
    }
    return out;
  }
  if (!(p.nu1 == 0 && p.nu2 == 0 && p.eta1 > 0 && p.eta1 == p.eta2))
    throw std::invalid_argument("bound_monitor: prop33 needs the magnetic_only preset");
  const double eta = p.eta1;
  const double X0 = r0.X;
  if (X0 <= 0.0) throw std::invalid_argument("bound_monitor: X(0) = 0, undefined ratio");
  for (const auto& r : series.records) {
    // int_0^t ||j||^2 = accum.grad_b by the ||grad b|| = ||j|| identity.
    const double log_bound = std::log(X0) + (16.0 / eta) * r.accum.grad_b;
    const double log_lhs = std::log(r.X + eta * r.accum.grad_j);
    out.push_back(std::exp(log_lhs - log_bound));
  }
  return out;
}

inline double bound_monitor(const DiagnosticsSeries& series, BoundKind which) {
  const auto ratios = bound_monitor_series(series, which);
  return *std::max_element(ratios.begin(), ratios.end());
}

/// sup over the p-ladder of p^{-1/2} int_0^T ||grad u(t)||_p dt (trapezoid
/// over the record cadence). Every requested p must be stored in the series.
inline double regularity_criterion(const DiagnosticsSeries& series,
                                   const std::vector<double>& p_list) {
  double best = 0.0;
  for (double p : p_list) {
    auto it = std::find(series.p_ladder.begin(), series.p_ladder.end(), p);
    if (it == series.p_ladder.end())
      throw std::invalid_argument("regularity_criterion: p not stored in the series");
    const std::size_t col = it - series.p_ladder.begin();
    double integral = 0.0;
    for (std::size_t k = 1; k < series.records.size(); ++k) {
      const auto& a = series.records[k - 1];
      const auto& b = series.records[k];
      integral += 0.5 * (b.t - a.t) * (a.grad_u_lp[col] + b.grad_u_lp[col]);
    }
    best = std::max(best, integral / std::sqrt(p));
  }
  return best;
}

inline const char* csv_columns() {
  return "t,l2_u,l2_b,l2_omega,l2_j,l2_grad_omega,l2_grad_j,l2_omega_y,l2_j_x,"
         "l2_u_x,l2_u_y,l2_b_x,l2_b_y,l2_grad_b,l2_grad_omega_y,l2_grad_j_x,X,"
         "cross_helicity,msq_potential,accum_u_x,accum_u_y,accum_b_x,accum_b_y,"
         "accum_omega_y,accum_j_x,accum_grad_u,accum_grad_b,accum_grad_j,"
         "accum_grad_omega_y,accum_grad_j_x";
}

/// Fixed column order, one row per record; grad-u columns appended per
/// ladder entry as grad_u_lp<p>.
inline void write_csv(const DiagnosticsSeries& series, std::ostream& os) {
  os << csv_columns();
  for (double p : series.p_ladder) {
    char buf[48];
    std::snprintf(buf, sizeof buf, ",grad_u_lp%g", p);
    os << buf;
  }
  os << "\n";
  char buf[32];
  const auto put = [&](double v, bool lead_comma = true) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (lead_comma) os << ',';
    os << buf;
  };
  for (const auto& r : series.records) {
    put(r.t, false);
    put(r.l2_u); put(r.l2_b); put(r.l2_omega); put(r.l2_j);
    put(r.l2_grad_omega); put(r.l2_grad_j); put(r.l2_omega_y); put(r.l2_j_x);
    put(r.l2_u_x); put(r.l2_u_y); put(r.l2_b_x); put(r.l2_b_y);
    put(r.l2_grad_b); put(r.l2_grad_omega_y); put(r.l2_grad_j_x); put(r.X);
    put(r.cross_helicity); put(r.msq_potential);
    put(r.accum.u_x); put(r.accum.u_y); put(r.accum.b_x); put(r.accum.b_y);
    put(r.accum.omega_y); put(r.accum.j_x); put(r.accum.grad_u);
    put(r.accum.grad_b); put(r.accum.grad_j); put(r.accum.grad_omega_y);
    put(r.accum.grad_j_x);
    for (double v : r.grad_u_lp) put(v);
    os << "\n";
  }
}

inline std::string to_csv(const DiagnosticsSeries& series) {
  std::ostringstream ss;
  write_csv(series, ss);
  return ss.str();
}

}  // namespace mhd2d
