#pragma once

#include <cstdint>
#include <stdexcept>

#include "mhd2d/field.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

namespace detail {

// splitmix64: deterministic across platforms, no library RNG involved.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mode_hash(std::uint64_t seed, int ki, int kj) {
  std::uint64_t h = seed;
  h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ki)) << 32 |
                      static_cast<std::uint32_t>(kj)));
  return splitmix64(h);
}

inline double unit_interval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Deterministic band-limited random field family. The coefficients depend
/// only on (seed, band_limit, spectrum_decay, mean_zero) and never on the
/// grid size, so the same spec on a finer grid samples the same function.
struct RandomFieldSpec {
  Grid grid;
  int band_limit = 8;       // max |k| per axis of active modes
  double spectrum_decay = 2.0;  // amplitudes proportional to (1+|k|)^-alpha
  std::uint64_t seed = 0;
  bool mean_zero = true;
};

/// Coefficient-space sample: amplitude (1+|k|)^-alpha, phase from the seed.
inline SpectralField sample_spectral(const RandomFieldSpec& spec) {
  const Grid& g = spec.grid;
  if (spec.band_limit > g.dealias_cut_x() || spec.band_limit > g.dealias_cut_y())
    throw std::invalid_argument("sample_field: band_limit exceeds the dealias cutoff");
  if (spec.band_limit < 0)
    throw std::invalid_argument("sample_field: band_limit must be >= 0");

  SpectralField f(g);
  const int bl = spec.band_limit;
  for (int kj = 0; kj <= bl; ++kj) {
    for (int ki = -bl; ki <= bl; ++ki) {
      if (kj == 0 && ki <= 0) continue;  // handled via the ki > 0 mirror below
      const double kk = std::sqrt(static_cast<double>(ki) * ki +
                                  static_cast<double>(kj) * kj);
      // Random modulation in [0.5, 1.5) on top of the decay envelope; a
      // deterministic envelope would make every norm transpose-symmetric.
      const std::uint64_t h = detail::mode_hash(spec.seed, ki, kj);
      const double mod = 0.5 + detail::unit_interval(detail::splitmix64(h));
      const double amp = mod * std::pow(1.0 + kk, -spec.spectrum_decay);
      const double phase = two_pi * detail::unit_interval(h);
      const std::complex<double> z = std::polar(amp, phase);
      const int i = ki >= 0 ? ki : ki + g.nx();
      f.at(i, kj) = z;
      // The ky = 0 column stores both halves of its own conjugate pairs.
      if (kj == 0) f.at(g.nx() - ki, 0) = std::conj(z);
    }
  }
  if (!spec.mean_zero)
    f.at(0, 0) = detail::unit_interval(detail::mode_hash(spec.seed, 0, 0));
  return f;
}

inline RealField sample_field(const RandomFieldSpec& spec) {
  return to_real(sample_spectral(spec));
}

}  // namespace mhd2d
