#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhd2d/fft.hpp"

namespace mhd2d {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Uniform periodic grid on [0,Lx) x [0,Ly) with signed wavenumber tables
/// and a 2/3-rule dealias mask. Spectral data is stored in the half-spectrum
/// layout of a real-to-complex transform: nx rows (full x wavenumber range)
/// by ny/2+1 columns (ky >= 0); negative-ky modes are implied by conjugate
/// symmetry. Immutable after construction; cheap to copy (shared handle).
class Grid {
 public:
  Grid() = default;

  int nx() const { return d_->nx; }
  int ny() const { return d_->ny; }
  int nyh() const { return d_->ny / 2 + 1; }
  double lx() const { return d_->Lx; }
  double ly() const { return d_->Ly; }
  double dx() const { return d_->Lx / d_->nx; }
  double dy() const { return d_->Ly / d_->ny; }
  double cell_area() const { return dx() * dy(); }
  double area() const { return d_->Lx * d_->Ly; }
  double x(int i) const { return i * dx(); }
  double y(int j) const { return j * dy(); }

  // Signed integer mode numbers; index nx/2 holds -nx/2.
  int kx_int(int i) const { return i < d_->nx / 2 ? i : i - d_->nx; }
  int ky_int(int j) const { return j < d_->ny / 2 ? j : j - d_->ny; }

  // Physical wavenumbers, scaled by 2*pi/L.
  const std::vector<double>& kx() const { return d_->kx; }
  const std::vector<double>& ky() const { return d_->ky; }

  int dealias_cut_x() const { return d_->nx / 3; }
  int dealias_cut_y() const { return d_->ny / 3; }
  // Mask over the half-spectrum layout: true where the mode is retained.
  bool dealias_keep(int i, int jh) const {
    return d_->mask[static_cast<std::size_t>(i) * nyh() + jh] != 0;
  }
  const std::vector<std::uint8_t>& dealias_mask() const { return d_->mask; }

  std::size_t spec_size() const { return static_cast<std::size_t>(d_->nx) * nyh(); }
  std::size_t real_size() const { return static_cast<std::size_t>(d_->nx) * d_->ny; }
  std::size_t spec_index(int i, int jh) const {
    return static_cast<std::size_t>(i) * nyh() + jh;
  }
  std::size_t real_index(int i, int j) const {
    return static_cast<std::size_t>(i) * d_->ny + j;
  }

  // Parseval weight: interior ky columns stand for a conjugate pair.
  double mode_weight(int jh) const { return (jh == 0 || jh == d_->ny / 2) ? 1.0 : 2.0; }

  const Fft& fft() const { return d_->fft; }

  bool valid() const { return static_cast<bool>(d_); }
  bool same_as(const Grid& o) const { return d_ == o.d_; }
  bool compatible(const Grid& o) const {
    return d_ == o.d_ || (valid() && o.valid() && nx() == o.nx() && ny() == o.ny() &&
                          lx() == o.lx() && ly() == o.ly());
  }

  friend Grid make_grid(int nx, int ny, double Lx, double Ly);

 private:
  struct Detail {
    int nx = 0, ny = 0;
    double Lx = 0, Ly = 0;
    std::vector<double> kx, ky;
    std::vector<std::uint8_t> mask;
    Fft fft;
    Detail(int nx_, int ny_) : fft(nx_, ny_) {}
  };
  std::shared_ptr<const Detail> d_;
};

inline Grid make_grid(int nx, int ny, double Lx = two_pi, double Ly = two_pi) {
  if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
    throw std::invalid_argument("make_grid: nx, ny must be even and >= 8, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  if (!(Lx > 0.0) || !(Ly > 0.0))
    throw std::invalid_argument("make_grid: domain lengths must be positive");

  auto d = std::make_shared<Grid::Detail>(nx, ny);
  d->nx = nx;
  d->ny = ny;
  d->Lx = Lx;
  d->Ly = Ly;
  d->kx.resize(nx);
  d->ky.resize(ny);
  for (int i = 0; i < nx; ++i)
    d->kx[i] = (i < nx / 2 ? i : i - nx) * (two_pi / Lx);
  for (int j = 0; j < ny; ++j)
    d->ky[j] = (j < ny / 2 ? j : j - ny) * (two_pi / Ly);

  const int cx = nx / 3, cy = ny / 3;
  const int nyh = ny / 2 + 1;
  d->mask.assign(static_cast<std::size_t>(nx) * nyh, 0);
  for (int i = 0; i < nx; ++i) {
    const int ki = i < nx / 2 ? i : i - nx;
    for (int jh = 0; jh < nyh; ++jh)
      d->mask[static_cast<std::size_t>(i) * nyh + jh] =
          (std::abs(ki) <= cx && jh <= cy) ? 1 : 0;
  }

  Grid g;
  g.d_ = std::move(d);
  return g;
}

}  // namespace mhd2d
