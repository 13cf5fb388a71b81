#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhd2d/diagnostics.hpp"
#include "mhd2d/params.hpp"
#include "mhd2d/state.hpp"

namespace mhd2d {

struct CflError : std::runtime_error {
  double suggested_dt;
  CflError(const std::string& msg, double dt) : std::runtime_error(msg), suggested_dt(dt) {}
};

struct BlowUpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double blow_up_threshold = 1e8;
inline constexpr double cfl_number = 0.5;

/// Time integrator for the vorticity-current system
///
///   omega_t + u.grad(omega) = nu1 omega_xx + nu2 omega_yy + b.grad(j)
///   j_t + u.grad(j) = eta1 j_xx + eta2 j_yy + b.grad(omega)
///                     + 2 d_x b1 (d_x u2 + d_y u1) - 2 d_x u1 (d_x b2 + d_y b1)
///
/// with u, b reconstructed from (omega, j) by the zero-mean Biot-Savart law.
/// Nonlinear terms are pseudo-spectral with 2/3 dealiasing (exact Galerkin
/// truncation on the retained band); diffusion, plus the epsilon-Laplacian
/// when epsilon > 0, is applied by an exact per-mode integrating factor, so
/// only the advective CFL constrains dt. Classical RK4 in the integrating-
/// factor variables handles the nonlinear part.
///
/// Time integrals of the dissipation functionals are advanced alongside the
/// state with the same RK4 stage weights, so the discrete energy budget
/// closes at the order of the scheme.
class Stepper {
 public:
  static constexpr int order = 4;

  Stepper(Grid grid, MhdParams params)
      : g_(std::move(grid)), p_(params) {
    p_.validate();
    const std::size_t S = g_.spec_size(), R = g_.real_size();
    for (auto* b : {&s_w_, &s_j_, &a1w_, &a1j_, &a2w_, &a2j_, &a3w_, &a3j_,
                    &a4w_, &a4j_, &scratch_})
      b->assign(S, {0.0, 0.0});
    for (auto* b : {&ew_full_, &ew_half_, &ej_full_, &ej_half_}) b->assign(S, 1.0);
    for (auto* b : {&u1_, &u2_, &b1_, &b2_, &wx_, &wy_, &jx_, &jy_,
                    &dxb1_, &dxu1_, &su_, &sb_, &nl1_, &nl2_, &omega_phys_})
      b->assign(R, 0.0);
    table_dt_ = -1.0;
  }

  const Grid& grid() const { return g_; }
  const MhdParams& params() const { return p_; }
  const DissipationIntegrals& integrals() const { return integrals_; }
  void reset_integrals() { integrals_ = DissipationIntegrals{}; }
  double last_max_speed() const { return last_max_speed_; }
  double last_max_abs_omega() const { return last_max_abs_omega_; }

  /// Nonlinear tendencies (advection, Lorentz transfer, stretching source),
  /// dealiased and mean-zero. Diffusion is not included here.
  void nonlinear(const std::vector<std::complex<double>>& w,
                 const std::vector<std::complex<double>>& j,
                 std::vector<std::complex<double>>& nw,
                 std::vector<std::complex<double>>& nj, bool track_extrema) {
    const int nx = g_.nx(), nyh = g_.nyh(), nyq_x = nx / 2, nyq_y = g_.ny() / 2;

    // Materialize a multiplier * source field in collocation space.
    const auto mat = [&](const std::vector<std::complex<double>>& src,
                         auto&& mult, std::vector<double>& out) {
      for (int i = 0; i < nx; ++i) {
        const double kx = g_.kx()[i];
        for (int jh = 0; jh < nyh; ++jh) {
          const double ky = g_.ky()[jh];
          const std::size_t m = static_cast<std::size_t>(i) * nyh + jh;
          scratch_[m] = (i == nyq_x || jh == nyq_y) ? 0.0 : mult(kx, ky) * src[m];
        }
      }
      g_.fft().inverse(scratch_.data(), out.data());
    };
    const std::complex<double> I{0.0, 1.0};
    const auto inv_k2 = [](double kx, double ky) {
      const double k2 = kx * kx + ky * ky;
      return k2 > 0.0 ? 1.0 / k2 : 0.0;
    };

    // u = perp-grad(psi), psi = -w/k^2; b likewise from j.
    mat(w, [&](double kx, double ky) { return I * ky * inv_k2(kx, ky); }, u1_);
    mat(w, [&](double kx, double ky) { return -I * kx * inv_k2(kx, ky); }, u2_);
    mat(j, [&](double kx, double ky) { return I * ky * inv_k2(kx, ky); }, b1_);
    mat(j, [&](double kx, double ky) { return -I * kx * inv_k2(kx, ky); }, b2_);
    mat(w, [&](double kx, double) { return I * kx; }, wx_);
    mat(w, [&](double, double ky) { return I * ky; }, wy_);
    mat(j, [&](double kx, double) { return I * kx; }, jx_);
    mat(j, [&](double, double ky) { return I * ky; }, jy_);
    // d_x b1 = -kx ky/k^2 j ; d_x u1 = -kx ky/k^2 w
    mat(j, [&](double kx, double ky) { return -kx * ky * inv_k2(kx, ky); }, dxb1_);
    mat(w, [&](double kx, double ky) { return -kx * ky * inv_k2(kx, ky); }, dxu1_);
    // d_x u2 + d_y u1 = (kx^2 - ky^2)/k^2 w ; same combination for b.
    mat(w, [&](double kx, double ky) { return (kx * kx - ky * ky) * inv_k2(kx, ky); }, su_);
    mat(j, [&](double kx, double ky) { return (kx * kx - ky * ky) * inv_k2(kx, ky); }, sb_);

    if (track_extrema) {
      mat(w, [&](double, double) { return 1.0; }, omega_phys_);
      double vmax = 0.0, wmax = 0.0;
      for (std::size_t m = 0; m < u1_.size(); ++m) {
        const double sp = std::sqrt(u1_[m] * u1_[m] + u2_[m] * u2_[m]) +
                          std::sqrt(b1_[m] * b1_[m] + b2_[m] * b2_[m]);
        vmax = std::max(vmax, sp);
        wmax = std::max(wmax, std::abs(omega_phys_[m]));
      }
      last_max_speed_ = vmax;
      last_max_abs_omega_ = wmax;
    }

    for (std::size_t m = 0; m < nl1_.size(); ++m) {
      nl1_[m] = -(u1_[m] * wx_[m] + u2_[m] * wy_[m]) + b1_[m] * jx_[m] + b2_[m] * jy_[m];
      nl2_[m] = -(u1_[m] * jx_[m] + u2_[m] * jy_[m]) + b1_[m] * wx_[m] + b2_[m] * wy_[m] +
                2.0 * dxb1_[m] * su_[m] - 2.0 * dxu1_[m] * sb_[m];
    }
    g_.fft().forward(nl1_.data(), nw.data());
    g_.fft().forward(nl2_.data(), nj.data());
    const auto& mask = g_.dealias_mask();
    for (std::size_t m = 0; m < nw.size(); ++m) {
      if (!mask[m]) { nw[m] = 0.0; nj[m] = 0.0; }
    }
    nw[0] = 0.0;
    nj[0] = 0.0;
  }

  /// One integrating-factor RK4 step. Throws CflError when dt exceeds the
  /// advective bound and BlowUpError on non-finite or runaway fields.
  void advance(MhdState& state, double dt) {
    if (dt < 0.0) throw std::invalid_argument("step: dt must be nonnegative");
    ensure_tables(dt);
    const std::size_t S = g_.spec_size();
    auto& w = state.omega_hat.c;
    auto& j = state.j_hat.c;

    nonlinear(w, j, a1w_, a1j_, true);
    if (!(last_max_abs_omega_ <= blow_up_threshold))
      throw BlowUpError("blow-up detected: max|omega| = " +
                        std::to_string(last_max_abs_omega_) + " at t = " +
                        std::to_string(state.t));
    if (last_max_speed_ > 0.0) {
      const double dt_max = cfl_number * std::min(g_.dx(), g_.dy()) / last_max_speed_;
      if (dt > dt_max)
        throw CflError("step: dt = " + std::to_string(dt) +
                           " violates the advective CFL bound; suggested dt <= " +
                           std::to_string(dt_max),
                       dt_max);
    }

    FlowMoments g1 = flow_moments(g_, w.data(), j.data());
    if (!g1.finite()) throw BlowUpError("blow-up detected: non-finite state");

    const double h = dt;
    // Stage 2: s2 = E_half (y_n + h/2 a1)
    for (std::size_t m = 0; m < S; ++m) {
      s_w_[m] = ew_half_[m] * (w[m] + 0.5 * h * a1w_[m]);
      s_j_[m] = ej_half_[m] * (j[m] + 0.5 * h * a1j_[m]);
    }
    nonlinear(s_w_, s_j_, a2w_, a2j_, false);
    FlowMoments g2 = flow_moments(g_, s_w_.data(), s_j_.data());
    // Stage 3: s3 = E_half y_n + h/2 a2
    for (std::size_t m = 0; m < S; ++m) {
      s_w_[m] = ew_half_[m] * w[m] + 0.5 * h * a2w_[m];
      s_j_[m] = ej_half_[m] * j[m] + 0.5 * h * a2j_[m];
    }
    nonlinear(s_w_, s_j_, a3w_, a3j_, false);
    FlowMoments g3 = flow_moments(g_, s_w_.data(), s_j_.data());
    // Stage 4: s4 = E_full y_n + h E_half a3
    for (std::size_t m = 0; m < S; ++m) {
      s_w_[m] = ew_full_[m] * w[m] + h * ew_half_[m] * a3w_[m];
      s_j_[m] = ej_full_[m] * j[m] + h * ej_half_[m] * a3j_[m];
    }
    nonlinear(s_w_, s_j_, a4w_, a4j_, false);
    FlowMoments g4 = flow_moments(g_, s_w_.data(), s_j_.data());

    for (std::size_t m = 0; m < S; ++m) {
      w[m] = ew_full_[m] * w[m] +
             (h / 6.0) * (ew_full_[m] * a1w_[m] +
                          2.0 * ew_half_[m] * (a2w_[m] + a3w_[m]) + a4w_[m]);
      j[m] = ej_full_[m] * j[m] +
             (h / 6.0) * (ej_full_[m] * a1j_[m] +
                          2.0 * ej_half_[m] * (a2j_[m] + a3j_[m]) + a4j_[m]);
    }
    w[0] = 0.0;
    j[0] = 0.0;
    state.t += dt;

    integrals_.add_scaled(h / 6.0, g1);
    integrals_.add_scaled(h / 3.0, g2);
    integrals_.add_scaled(h / 3.0, g3);
    integrals_.add_scaled(h / 6.0, g4);
  }

 private:
  void ensure_tables(double dt) {
    if (dt == table_dt_) return;
    const int nx = g_.nx(), nyh = g_.nyh();
    for (int i = 0; i < nx; ++i) {
      const double kx2 = g_.kx()[i] * g_.kx()[i];
      for (int jh = 0; jh < nyh; ++jh) {
        const double ky2 = g_.ky()[jh] * g_.ky()[jh];
        const double k2 = kx2 + ky2;
        const double lw = p_.nu1 * kx2 + p_.nu2 * ky2 + p_.epsilon * k2;
        const double lj = p_.eta1 * kx2 + p_.eta2 * ky2 + p_.epsilon * k2;
        const std::size_t m = static_cast<std::size_t>(i) * nyh + jh;
        ew_full_[m] = std::exp(-lw * dt);
        ew_half_[m] = std::exp(-lw * 0.5 * dt);
        ej_full_[m] = std::exp(-lj * dt);
        ej_half_[m] = std::exp(-lj * 0.5 * dt);
      }
    }
    table_dt_ = dt;
  }

  Grid g_;
  MhdParams p_;
  DissipationIntegrals integrals_;
  double table_dt_ = -1.0;
  double last_max_speed_ = 0.0, last_max_abs_omega_ = 0.0;
  std::vector<std::complex<double>> s_w_, s_j_, a1w_, a1j_, a2w_, a2j_, a3w_, a3j_,
      a4w_, a4j_, scratch_;
  std::vector<double> ew_full_, ew_half_, ej_full_, ej_half_;
  std::vector<double> u1_, u2_, b1_, b2_, wx_, wy_, jx_, jy_, dxb1_, dxu1_, su_, sb_,
      nl1_, nl2_, omega_phys_;
};

/// Full tendencies including diffusion, as a standalone operation.
inline std::pair<SpectralField, SpectralField> rhs(const MhdState& state,
                                                   const MhdParams& params) {
  Stepper st(state.grid(), params);
  SpectralField nw(state.grid()), nj(state.grid());
  st.nonlinear(state.omega_hat.c, state.j_hat.c, nw.c, nj.c, false);
  if (!nw.finite() || !nj.finite())
    throw BlowUpError("rhs: non-finite nonlinear products");
  const Grid& g = state.grid();
  for (int i = 0; i < g.nx(); ++i) {
    const double kx2 = g.kx()[i] * g.kx()[i];
    for (int jh = 0; jh < g.nyh(); ++jh) {
      const double ky2 = g.ky()[jh] * g.ky()[jh];
      const double k2 = kx2 + ky2;
      const std::size_t m = g.spec_index(i, jh);
      nw.c[m] -= (params.nu1 * kx2 + params.nu2 * ky2 + params.epsilon * k2) *
                 state.omega_hat.c[m];
      nj.c[m] -= (params.eta1 * kx2 + params.eta2 * ky2 + params.epsilon * k2) *
                 state.j_hat.c[m];
    }
  }
  nw.c[0] = 0.0;
  nj.c[0] = 0.0;
  return {std::move(nw), std::move(nj)};
}

/// One-shot step (tests and small drivers; runs reuse a Stepper).
inline MhdState step(const MhdState& state, const MhdParams& params, double dt) {
  Stepper st(state.grid(), params);
  MhdState out = state;
  st.advance(out, dt);
  return out;
}

struct RunOptions {
  double dt = 1e-3;
  double t_end = 1.0;
  double diagnostics_interval = 0.0;  // <= 0: record every step
  std::vector<double> p_ladder = {2, 4, 8, 16, 32, 64};
};

struct RunResult {
  MhdState state;
  DiagnosticsSeries series;
};

/// Integrate from t = 0 to t_end, recording diagnostics on the configured
/// cadence. Deterministic for a fixed configuration. On blow-up the partial
/// series is returned with the failure marker set; CFL violations propagate.
inline RunResult run(const MhdState& initial, const MhdParams& params,
                     const RunOptions& opts) {
  if (!(opts.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
  if (opts.t_end < 0.0) throw std::invalid_argument("run: t_end must be >= 0");

  RunResult res;
  res.state = initial;
  res.state.omega_hat.set_mean_zero();
  res.state.j_hat.set_mean_zero();
  res.state.t = 0.0;

  DiagnosticsSeries& series = res.series;
  series.params = params;
  series.nx = initial.grid().nx();
  series.ny = initial.grid().ny();
  series.Lx = initial.grid().lx();
  series.Ly = initial.grid().ly();
  series.dt = opts.dt;
  series.p_ladder = opts.p_ladder;

  Stepper stepper(initial.grid(), params);
  const long n_steps = static_cast<long>(std::ceil(opts.t_end / opts.dt - 1e-12));
  const long every = opts.diagnostics_interval <= 0.0
                         ? 1
                         : std::max<long>(1, std::llround(opts.diagnostics_interval / opts.dt));

  series.records.push_back(make_record(res.state, stepper.integrals(), opts.p_ladder));
  for (long k = 1; k <= n_steps; ++k) {
    const double dt_k = std::min(opts.dt, opts.t_end - (k - 1) * opts.dt);
    try {
      stepper.advance(res.state, dt_k);
    } catch (const BlowUpError& e) {
      series.blow_up = true;
      series.error = e.what();
      series.records.push_back(make_record(res.state, stepper.integrals(), opts.p_ladder));
      return res;
    }
    if (k % every == 0 || k == n_steps)
      series.records.push_back(make_record(res.state, stepper.integrals(), opts.p_ladder));
  }
  if (!res.state.finite()) {
    series.blow_up = true;
    series.error = "blow-up detected: non-finite final state";
  }
  return res;
}

}  // namespace mhd2d
