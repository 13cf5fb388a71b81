#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

namespace mhd2d {

/// Thin RAII wrapper around FFTW r2c/c2r plans for one grid size.
///
/// Plans are created with FFTW_ESTIMATE so plan selection does not depend on
/// runtime timing: identical inputs give bit-identical outputs across runs.
/// Execution through the new-array interface is safe from multiple threads
/// as long as each thread uses its own buffers. The c2r direction clobbers
/// its input (FFTW multidimensional c2r always does); callers pass scratch.
class Fft {
 public:
  Fft(int nx, int ny) : nx_(nx), ny_(ny) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    std::vector<double> r(static_cast<std::size_t>(nx) * ny);
    std::vector<std::complex<double>> c(static_cast<std::size_t>(nx) * (ny / 2 + 1));
    fwd_ = fftw_plan_dft_r2c_2d(nx, ny, r.data(),
                                reinterpret_cast<fftw_complex*>(c.data()),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd_ = fftw_plan_dft_c2r_2d(nx, ny, reinterpret_cast<fftw_complex*>(c.data()),
                                r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  }

  ~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  /// Real samples -> Fourier coefficients (normalized by 1/(nx*ny), so the
  /// k=0 entry equals the field average). Input is preserved.
  void forward(const double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(fwd_, const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    const double s = 1.0 / (static_cast<double>(nx_) * ny_);
    const std::size_t n = static_cast<std::size_t>(nx_) * (ny_ / 2 + 1);
    for (std::size_t i = 0; i < n; ++i) out[i] *= s;
  }

  /// Fourier coefficients -> real samples. `in` is destroyed.
  void inverse(std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(bwd_, reinterpret_cast<fftw_complex*>(in), out);
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }
  int nx_, ny_;
  fftw_plan fwd_, bwd_;
};

}  // namespace mhd2d
