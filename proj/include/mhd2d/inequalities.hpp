#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mhd2d/random_field.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

// ---------------------------------------------------------------------------
// 1D profiles (for the one-dimensional interpolation inequality)
// ---------------------------------------------------------------------------

struct Profile1d {
  double length = two_pi;
  std::vector<double> v;
};

/// Deterministic band-limited 1D sample, same hashing as the 2D family.
inline Profile1d sample_profile(int n, double length, int band_limit, double alpha,
                                std::uint64_t seed) {
  if (band_limit < 1 || band_limit > n / 3)
    throw std::invalid_argument("sample_profile: band_limit out of range");
  Profile1d F;
  F.length = length;
  F.v.assign(n, 0.0);
  for (int k = 1; k <= band_limit; ++k) {
    const double amp = std::pow(1.0 + k, -alpha);
    const double phase = two_pi * detail::unit_interval(detail::mode_hash(seed, k, 0));
    for (int i = 0; i < n; ++i)
      F.v[i] += 2.0 * amp * std::cos(k * (two_pi * i / n) + phase);
  }
  return F;
}

/// Spectral derivative of periodic samples by direct DFT (n is small).
inline Profile1d profile_derivative(const Profile1d& F) {
  const int n = static_cast<int>(F.v.size());
  std::vector<std::complex<double>> c(n, {0.0, 0.0});
  for (int k = 0; k < n; ++k) {
    std::complex<double> s{0.0, 0.0};
    for (int i = 0; i < n; ++i)
      s += F.v[i] * std::polar(1.0, -two_pi * k * i / static_cast<double>(n));
    c[k] = s / static_cast<double>(n);
  }
  Profile1d d;
  d.length = F.length;
  d.v.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = 1; k < n / 2; ++k) {  // odd derivative: Nyquist dropped
      const double kk = k * (two_pi / F.length);
      const std::complex<double> e = std::polar(1.0, two_pi * k * i / static_cast<double>(n));
      acc += 2.0 * (std::complex<double>{0.0, kk} * c[k] * e).real();
    }
    d.v[i] = acc;
  }
  return d;
}

inline double profile_l2(const Profile1d& F) {
  double s = 0.0;
  for (double x : F.v) s += x * x;
  return std::sqrt(s * F.length / static_cast<double>(F.v.size()));
}

inline double profile_max(const Profile1d& F) {
  double m = 0.0;
  for (double x : F.v) m = std::max(m, std::abs(x));
  return m;
}

// ---------------------------------------------------------------------------
// Inequality checks. Each returns LHS/RHS with the constant set to 1, so the
// reported ratio is the empirical constant; interp_1d keeps its explicit
// sqrt(2) in the RHS and must satisfy ratio <= 1.
// ---------------------------------------------------------------------------

struct DegenerateInput : std::domain_error {
  DegenerateInput() : std::domain_error("degenerate input") {}
};

/// iint |f g h| <= C |f|_2 |g|_2^1/2 |g_y|_2^1/2 |h|_2^1/2 |h_x|_2^1/2
inline double check_trilinear_aniso(const RealField& f, const RealField& g,
                                    const RealField& h) {
  RealField prod(f.grid);
  for (std::size_t m = 0; m < prod.v.size(); ++m)
    prod.v[m] = std::abs(f.v[m] * g.v[m] * h.v[m]);
  double lhs = 0.0;
  for (double x : prod.v) lhs += x;
  lhs *= f.grid.cell_area();
  const SpectralField gh = transform(g), hh = transform(h);
  const double rhs = lp_norm(f, 2.0) * std::sqrt(l2_norm(gh)) *
                     std::sqrt(l2_norm(derivative(gh, Axis::y, 1))) *
                     std::sqrt(l2_norm(hh)) *
                     std::sqrt(l2_norm(derivative(hh, Axis::x, 1)));
  if (rhs == 0.0) throw DegenerateInput{};
  return lhs / rhs;
}

/// sup |F| <= sqrt(2) (int F^2)^1/4 (int F_x^2)^1/4 for mean-zero periodic F.
inline double check_interp_1d(const Profile1d& F) {
  double mean = 0.0, amax = 0.0;
  for (double x : F.v) {
    mean += x;
    amax = std::max(amax, std::abs(x));
  }
  mean /= static_cast<double>(F.v.size());
  if (std::abs(mean) > 1e-12 * std::max(1.0, amax))
    throw std::invalid_argument("interp_1d: profile must be mean-zero");
  const double rhs = std::sqrt(2.0) * std::sqrt(profile_l2(F)) *
                     std::sqrt(profile_l2(profile_derivative(F)));
  if (rhs == 0.0) throw DegenerateInput{};
  return profile_max(F) / rhs;
}

/// sup_y int |g(x,y)|^2 dx <= C |g|_2 |g_y|_2 for mean-zero g.
inline double check_slice_sup(const RealField& g) {
  const Grid& gr = g.grid;
  double lhs = 0.0;
  for (int j = 0; j < gr.ny(); ++j) {
    double row = 0.0;
    for (int i = 0; i < gr.nx(); ++i) row += g(i, j) * g(i, j);
    lhs = std::max(lhs, row * gr.dx());
  }
  const SpectralField gh = transform(g);
  const double rhs = l2_norm(gh) * l2_norm(derivative(gh, Axis::y, 1));
  if (rhs == 0.0) throw DegenerateInput{};
  return lhs / rhs;
}

/// |f|_inf <= C (|f|_2 + |f_x|_2 + |f_yy|_2) and the axis-swapped variant.
inline double check_dp_linfty(const RealField& f, Axis first_order_axis) {
  const SpectralField fh = transform(f);
  const Axis a1 = first_order_axis;
  const Axis a2 = first_order_axis == Axis::x ? Axis::y : Axis::x;
  const double rhs = l2_norm(fh) + l2_norm(derivative(fh, a1, 1)) +
                     l2_norm(derivative(fh, a2, 2));
  if (rhs == 0.0) throw DegenerateInput{};
  return f.max_abs() / rhs;
}
inline double check_dp_linfty_x(const RealField& f) { return check_dp_linfty(f, Axis::x); }
inline double check_dp_linfty_y(const RealField& f) { return check_dp_linfty(f, Axis::y); }

inline const std::vector<double>& log_sobolev_q_ladder() {
  static const std::vector<double> q = {2, 4, 8, 16, 32, 64, 128, 256};
  return q;
}

/// |f|_inf <= C sup_q |f|_q / sqrt(q) * sqrt(log(e + |f|_H2)), q over a
/// geometric ladder up to 256.
inline double check_log_sobolev(const RealField& f) {
  double supq = 0.0;
  for (double q : log_sobolev_q_ladder())
    supq = std::max(supq, lp_norm(f, q) / std::sqrt(q));
  const double h2 = hs_norm(transform(f), 2.0);
  const double rhs = supq * std::sqrt(std::log(std::exp(1.0) + h2));
  if (rhs == 0.0) throw DegenerateInput{};
  return f.max_abs() / rhs;
}

/// |f|_4 <= C |f|_2^1/2 |grad f|_2^1/2
inline double check_ladyzhenskaya(const RealField& f) {
  const SpectralField fh = transform(f);
  const double rhs = std::sqrt(l2_norm(fh)) * std::sqrt(grad_l2_norm(fh));
  if (rhs == 0.0) throw DegenerateInput{};
  return lp_norm(f, 4.0) / rhs;
}

struct CommutatorOptions {
  int beta_x = 2, beta_y = 1;  // multi-index of total order 3
  double p = 2.0, p1 = 8.0, p2 = 8.0 / 3.0, p3 = 8.0, p4 = 8.0 / 3.0;
};

namespace detail {

inline RealField vector_magnitude(const std::vector<RealField>& comps) {
  RealField out(comps.front().grid);
  for (std::size_t m = 0; m < out.v.size(); ++m) {
    double s = 0.0;
    for (const auto& c : comps) s += c.v[m] * c.v[m];
    out.v[m] = std::sqrt(s);
  }
  return out;
}

inline SpectralField multi_derivative(const SpectralField& f, int ax, int ay) {
  SpectralField out = f;
  if (ax > 0) out = derivative(out, Axis::x, ax);
  if (ay > 0) out = derivative(out, Axis::y, ay);
  return out;
}

/// Sum over |alpha| <= s of the L^p norms of the pointwise magnitude of
/// D^alpha applied to each component (equivalent W^{s,p} norm on
/// band-limited fields).
inline double sobolev_wsp(const std::vector<SpectralField>& comps, int s, double p) {
  double total = 0.0;
  for (int ax = 0; ax <= s; ++ax)
    for (int ay = 0; ay + ax <= s; ++ay) {
      std::vector<RealField> dcomps;
      dcomps.reserve(comps.size());
      for (const auto& c : comps) dcomps.push_back(to_real(multi_derivative(c, ax, ay)));
      total += lp_norm(vector_magnitude(dcomps), p);
    }
  return total;
}

}  // namespace detail

/// |[D^beta, f.grad] g|_p <= C (|grad f|_p1 |grad g|_{W^{2,p2}} +
/// |f|_{W^{3,p3}} |grad g|_p4) with 1/p = 1/p1 + 1/p2 = 1/p3 + 1/p4,
/// |beta| = 3, f a vector field and g a scalar.
inline double check_commutator(const RealField& f1, const RealField& f2,
                               const RealField& g,
                               const CommutatorOptions& opt = {}) {
  if (opt.beta_x + opt.beta_y != 3 || opt.beta_x < 0 || opt.beta_y < 0)
    throw std::invalid_argument("commutator: beta must have total order 3");
  const double tol = 1e-12;
  if (std::abs(1.0 / opt.p - 1.0 / opt.p1 - 1.0 / opt.p2) > tol ||
      std::abs(1.0 / opt.p - 1.0 / opt.p3 - 1.0 / opt.p4) > tol)
    throw std::invalid_argument("commutator: incompatible Lebesgue exponents");

  const Grid& gr = g.grid;
  const SpectralField gh = transform(g);
  const SpectralField f1h = transform(f1), f2h = transform(f2);
  RealField gx = to_real(derivative(gh, Axis::x, 1));
  RealField gy = to_real(derivative(gh, Axis::y, 1));

  // D^beta(f . grad g) - f . grad(D^beta g)
  RealField fdg(gr);
  for (std::size_t m = 0; m < fdg.v.size(); ++m)
    fdg.v[m] = f1.v[m] * gx.v[m] + f2.v[m] * gy.v[m];
  RealField term1 =
      to_real(detail::multi_derivative(transform(fdg), opt.beta_x, opt.beta_y));
  const SpectralField dbg = detail::multi_derivative(gh, opt.beta_x, opt.beta_y);
  RealField dbgx = to_real(derivative(dbg, Axis::x, 1));
  RealField dbgy = to_real(derivative(dbg, Axis::y, 1));
  RealField comm(gr);
  for (std::size_t m = 0; m < comm.v.size(); ++m)
    comm.v[m] = term1.v[m] - (f1.v[m] * dbgx.v[m] + f2.v[m] * dbgy.v[m]);
  const double lhs = lp_norm(comm, opt.p);

  std::vector<RealField> grad_f = {to_real(derivative(f1h, Axis::x, 1)),
                                   to_real(derivative(f1h, Axis::y, 1)),
                                   to_real(derivative(f2h, Axis::x, 1)),
                                   to_real(derivative(f2h, Axis::y, 1))};
  const double grad_f_p1 = lp_norm(detail::vector_magnitude(grad_f), opt.p1);
  const std::vector<SpectralField> grad_g = {derivative(gh, Axis::x, 1),
                                             derivative(gh, Axis::y, 1)};
  const double grad_g_w2p2 = detail::sobolev_wsp(grad_g, 2, opt.p2);
  const std::vector<SpectralField> fvec = {f1h, f2h};
  const double f_w3p3 = detail::sobolev_wsp(fvec, 3, opt.p3);
  const double grad_g_p4 =
      lp_norm(detail::vector_magnitude({to_real(grad_g[0]), to_real(grad_g[1])}), opt.p4);

  const double rhs = grad_f_p1 * grad_g_w2p2 + f_w3p3 * grad_g_p4;
  if (rhs == 0.0) throw DegenerateInput{};
  return lhs / rhs;
}

// ---------------------------------------------------------------------------
// Campaigns
// ---------------------------------------------------------------------------

enum class InequalityKind {
  trilinear_aniso,
  interp_1d,
  slice_sup,
  dp_linfty_x,
  dp_linfty_y,
  log_sobolev,
  ladyzhenskaya,
  commutator,
};

inline const char* to_string(InequalityKind k) {
  switch (k) {
    case InequalityKind::trilinear_aniso: return "trilinear_aniso";
    case InequalityKind::interp_1d: return "interp_1d";
    case InequalityKind::slice_sup: return "slice_sup";
    case InequalityKind::dp_linfty_x: return "dp_linfty_x";
    case InequalityKind::dp_linfty_y: return "dp_linfty_y";
    case InequalityKind::log_sobolev: return "log_sobolev";
    case InequalityKind::ladyzhenskaya: return "ladyzhenskaya";
    default: return "commutator";
  }
}

inline InequalityKind inequality_kind_from_string(const std::string& s) {
  for (InequalityKind k :
       {InequalityKind::trilinear_aniso, InequalityKind::interp_1d,
        InequalityKind::slice_sup, InequalityKind::dp_linfty_x,
        InequalityKind::dp_linfty_y, InequalityKind::log_sobolev,
        InequalityKind::ladyzhenskaya, InequalityKind::commutator})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown inequality kind '" + s + "'");
}

struct InequalityReport {
  InequalityKind kind = InequalityKind::trilinear_aniso;
  int n_samples = 0;
  int n_valid = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  std::uint64_t argmax_seed = 0;
  int resolution = 0;
};

/// Evaluate one sampled instance of the inequality. Input seeds are derived
/// deterministically from (family seed, sample index, input slot).
inline double inequality_sample_ratio(InequalityKind kind, const RandomFieldSpec& family,
                                      std::uint64_t sample_seed) {
  const auto slot_seed = [&](int slot) {
    return detail::splitmix64(sample_seed + 0x100 * static_cast<std::uint64_t>(slot));
  };
  const auto field = [&](int slot) {
    RandomFieldSpec s = family;
    s.seed = slot_seed(slot);
    return sample_field(s);
  };
  switch (kind) {
    case InequalityKind::trilinear_aniso:
      return check_trilinear_aniso(field(0), field(1), field(2));
    case InequalityKind::interp_1d:
      return check_interp_1d(sample_profile(family.grid.nx(), family.grid.lx(),
                                            family.band_limit, family.spectrum_decay,
                                            slot_seed(0)));
    case InequalityKind::slice_sup:
      return check_slice_sup(field(0));
    case InequalityKind::dp_linfty_x:
      return check_dp_linfty_x(field(0));
    case InequalityKind::dp_linfty_y:
      return check_dp_linfty_y(field(0));
    case InequalityKind::log_sobolev:
      return check_log_sobolev(field(0));
    case InequalityKind::ladyzhenskaya:
      return check_ladyzhenskaya(field(0));
    default:
      return check_commutator(field(0), field(1), field(2));
  }
}

/// Draw n_samples independent input tuples and reduce to a report. Sampling
/// and the reduction are deterministic for a fixed family seed; samples are
/// processed in parallel chunks.
inline InequalityReport run_campaign(InequalityKind kind, const RandomFieldSpec& family,
                                     int n_samples, int n_threads = 0) {
  if (n_samples < 1) throw std::invalid_argument("run_campaign: n_samples must be >= 1");
  if (n_threads <= 0)
    n_threads = std::max(1u, std::thread::hardware_concurrency());

  std::vector<double> ratios(n_samples, -1.0);  // -1 marks a degenerate draw
  std::vector<std::uint64_t> seeds(n_samples);
  for (int s = 0; s < n_samples; ++s)
    seeds[s] = detail::splitmix64(family.seed ^ (0x9e3779b97f4a7c15ULL * (s + 1)));

  const auto worker = [&](int begin, int end) {
    for (int s = begin; s < end; ++s) {
      try {
        ratios[s] = inequality_sample_ratio(kind, family, seeds[s]);
      } catch (const DegenerateInput&) {
        ratios[s] = -1.0;
      }
    }
  };
  if (n_threads == 1 || n_samples < 4) {
    worker(0, n_samples);
  } else {
    std::vector<std::future<void>> futs;
    const int chunk = (n_samples + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int b = t * chunk, e = std::min(n_samples, b + chunk);
      if (b >= e) break;
      futs.push_back(std::async(std::launch::async, worker, b, e));
    }
    for (auto& f : futs) f.get();
  }

  InequalityReport rep;
  rep.kind = kind;
  rep.n_samples = n_samples;
  rep.resolution = family.grid.nx();
  std::vector<double> valid;
  valid.reserve(n_samples);
  for (int s = 0; s < n_samples; ++s) {
    if (ratios[s] < 0.0) continue;
    valid.push_back(ratios[s]);
    if (ratios[s] > rep.max_ratio) {
      rep.max_ratio = ratios[s];
      rep.argmax_seed = seeds[s];
    }
  }
  if (valid.empty()) throw std::runtime_error("run_campaign: all samples degenerate");
  rep.n_valid = static_cast<int>(valid.size());
  std::sort(valid.begin(), valid.end());
  const std::size_t n = valid.size();
  rep.median_ratio = n % 2 ? valid[n / 2] : 0.5 * (valid[n / 2 - 1] + valid[n / 2]);
  return rep;
}

}  // namespace mhd2d
