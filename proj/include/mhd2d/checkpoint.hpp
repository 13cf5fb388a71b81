#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhd2d/state.hpp"

namespace mhd2d {

namespace detail {

inline void put_u32le(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}
inline void put_f64le(std::string& out, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}
inline std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}
inline double get_f64le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

}  // namespace detail

/// Checkpoint layout: magic "MHD2", one version byte (1), nx and ny as
/// 32-bit little-endian, t as a little-endian 64-bit float, then the full
/// nx x ny omega and j coefficient arrays as little-endian (re, im) float64
/// pairs, row-major with the x wavenumber index outermost and y indices in
/// standard FFT order (0..ny/2, then negative frequencies).
inline std::string checkpoint_bytes(const MhdState& s) {
  const Grid& g = s.grid();
  std::string out;
  out.reserve(13 + 8 + 2 * g.real_size() * 16);
  out += "MHD2";
  out.push_back(static_cast<char>(1));
  detail::put_u32le(out, static_cast<std::uint32_t>(g.nx()));
  detail::put_u32le(out, static_cast<std::uint32_t>(g.ny()));
  detail::put_f64le(out, s.t);
  const auto dump = [&](const SpectralField& f) {
    for (int i = 0; i < g.nx(); ++i)
      for (int j = 0; j < g.ny(); ++j) {
        // Nyquist maps to +n/2 so stored entries round-trip bit-exactly.
        const int ki = i <= g.nx() / 2 ? i : i - g.nx();
        const int kj = j <= g.ny() / 2 ? j : j - g.ny();
        const std::complex<double> z = f.coefficient(ki, kj);
        detail::put_f64le(out, z.real());
        detail::put_f64le(out, z.imag());
      }
  };
  dump(s.omega_hat);
  dump(s.j_hat);
  return out;
}

inline void save_checkpoint(const std::string& path, const MhdState& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_checkpoint: cannot open '" + path + "'");
  const std::string bytes = checkpoint_bytes(s);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw std::runtime_error("save_checkpoint: write failed for '" + path + "'");
}

/// The file stores only grid sizes; domain lengths come from the caller.
inline MhdState load_checkpoint(const std::string& path, double Lx = two_pi,
                                double Ly = two_pi) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_checkpoint: cannot open '" + path + "'");
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)),
                                 std::istreambuf_iterator<char>());
  if (buf.size() < 21 || std::memcmp(buf.data(), "MHD2", 4) != 0)
    throw std::runtime_error("load_checkpoint: bad magic in '" + path + "'");
  if (buf[4] != 1)
    throw std::runtime_error("load_checkpoint: unsupported version " +
                             std::to_string(buf[4]));
  const int nx = static_cast<int>(detail::get_u32le(buf.data() + 5));
  const int ny = static_cast<int>(detail::get_u32le(buf.data() + 9));
  const double t = detail::get_f64le(buf.data() + 13);
  const std::size_t need =
      21 + 2 * static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * 16;
  if (nx <= 0 || ny <= 0 || buf.size() != need)
    throw std::runtime_error("load_checkpoint: truncated or oversized file");

  Grid g = make_grid(nx, ny, Lx, Ly);
  MhdState s(g);
  s.t = t;
  const auto read_field = [&](SpectralField& f, std::size_t base) {
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < g.nyh(); ++j) {
        const std::size_t off = base + (static_cast<std::size_t>(i) * ny + j) * 16;
        f.at(i, j) = {detail::get_f64le(buf.data() + off),
                      detail::get_f64le(buf.data() + off + 8)};
      }
  };
  read_field(s.omega_hat, 21);
  read_field(s.j_hat, 21 + static_cast<std::size_t>(nx) * ny * 16);
  return s;
}

}  // namespace mhd2d
