#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "mhd2d/grid.hpp"
#include "mhd2d/random_field.hpp"
#include "mhd2d/spectral.hpp"
#include "test_util.hpp"

using namespace mhd2d;
using testutil::fill;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("make_grid wavenumber tables and dealias mask") {
  Grid g = make_grid(8, 8);
  const double expected[8] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int i = 0; i < 8; ++i) REQUIRE(g.kx()[i] == Catch::Approx(expected[i]).margin(1e-15));
  for (int j = 0; j < 8; ++j) REQUIRE(g.ky()[j] == Catch::Approx(expected[j]).margin(1e-15));

  // 2/3 rule keeps |k| <= 2 on an 8-point axis; Nyquist (|k|=4) is excluded.
  REQUIRE(g.dealias_cut_x() == 2);
  REQUIRE(g.dealias_keep(2, 0));
  REQUIRE(g.dealias_keep(8 - 2, 2));
  REQUIRE_FALSE(g.dealias_keep(3, 0));
  REQUIRE_FALSE(g.dealias_keep(4, 0));
  REQUIRE_FALSE(g.dealias_keep(0, 3));
  REQUIRE_FALSE(g.dealias_keep(0, 4));

  Grid g64 = make_grid(64, 64);
  REQUIRE(g64.dealias_cut_x() == 21);
  REQUIRE(g64.dealias_keep(21, 21));
  REQUIRE_FALSE(g64.dealias_keep(22, 0));
  REQUIRE_FALSE(g64.dealias_keep(64 / 2, 0));
}

TEST_CASE("make_grid rejects invalid sizes and lengths") {
  REQUIRE_THROWS_AS(make_grid(7, 8), std::invalid_argument);
  REQUIRE_THROWS_AS(make_grid(8, 9), std::invalid_argument);
  REQUIRE_THROWS_AS(make_grid(6, 8), std::invalid_argument);
  REQUIRE_THROWS_AS(make_grid(8, 8, -1.0, two_pi), std::invalid_argument);
  REQUIRE_THROWS_AS(make_grid(8, 8, two_pi, 0.0), std::invalid_argument);
}

TEST_CASE("spectral derivatives are exact on trigonometric fields") {
  Grid g = make_grid(32, 32);
  auto f = transform(fill(g, [](double x, double) { return std::sin(x); }));

  RealField dfx = to_real(derivative(f, Axis::x, 1));
  auto cosx = fill(g, [](double x, double) { return std::cos(x); });
  REQUIRE(testutil::max_abs_diff(dfx, cosx) < 1e-13);

  auto h = transform(fill(g, [](double, double y) { return std::sin(y); }));
  RealField dyy = to_real(derivative(h, Axis::y, 2));
  auto msiny = fill(g, [](double, double y) { return -std::sin(y); });
  REQUIRE(testutil::max_abs_diff(dyy, msiny) < 1e-13);
}

TEST_CASE("derivative composition: d/dx twice equals d2/dx2") {
  Grid g = make_grid(32, 32);
  RandomFieldSpec spec{g, 9, 1.5, 42u, true};
  SpectralField f = sample_spectral(spec);
  SpectralField once_twice = derivative(derivative(f, Axis::x, 1), Axis::x, 1);
  SpectralField second = derivative(f, Axis::x, 2);
  double scale = 0.0;
  for (auto& z : second.c) scale = std::max(scale, std::abs(z));
  REQUIRE(testutil::max_coeff_diff(once_twice, second) < 1e-14 * scale);
}

TEST_CASE("derivative order out of range is rejected") {
  Grid g = make_grid(8, 8);
  SpectralField f(g);
  REQUIRE_THROWS_AS(derivative(f, Axis::x, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(derivative(f, Axis::x, 0), std::invalid_argument);
}

TEST_CASE("derivative exactness against an explicit trig interpolant") {
  Grid g = make_grid(48, 48);
  // Hand-built band-limited function with known analytic derivative.
  struct Mode { int kx, ky; double a, phi; };
  const Mode modes[] = {{1, 0, 0.7, 0.3},  {0, 2, -0.4, 1.1}, {3, 5, 0.2, -0.8},
                        {-2, 4, 0.5, 2.0}, {7, 1, -0.1, 0.5}, {-6, 3, 0.3, -1.7}};
  auto fv = fill(g, [&](double x, double y) {
    double s = 0.0;
    for (auto& m : modes) s += m.a * std::cos(m.kx * x + m.ky * y + m.phi);
    return s;
  });
  auto dfv = fill(g, [&](double x, double y) {
    double s = 0.0;
    for (auto& m : modes) s += -m.a * m.kx * std::sin(m.kx * x + m.ky * y + m.phi);
    return s;
  });
  RealField got = to_real(derivative(transform(fv), Axis::x, 1));
  REQUIRE(testutil::max_abs_diff(got, dfv) < 1e-12);
}

TEST_CASE("biot_savart recovers the Taylor-Green velocity") {
  Grid g = make_grid(64, 64);
  auto omega = transform(
      fill(g, [](double x, double y) { return 2.0 * std::sin(x) * std::sin(y); }));
  auto [u1h, u2h] = biot_savart(omega);
  RealField u1 = to_real(u1h), u2 = to_real(u2h);
  auto e1 = fill(g, [](double x, double y) { return std::sin(x) * std::cos(y); });
  auto e2 = fill(g, [](double x, double y) { return -std::cos(x) * std::sin(y); });
  REQUIRE(testutil::max_abs_diff(u1, e1) < 1e-13);
  REQUIRE(testutil::max_abs_diff(u2, e2) < 1e-13);
}

TEST_CASE("biot_savart of zero curl is zero; nonzero mean rejected") {
  Grid g = make_grid(16, 16);
  SpectralField zero(g);
  auto [vx, vy] = biot_savart(zero);
  for (auto& z : vx.c) REQUIRE(std::abs(z) == 0.0);
  for (auto& z : vy.c) REQUIRE(std::abs(z) == 0.0);

  auto [mx, my] = biot_savart(zero, 0.3, -0.2);
  REQUIRE(mx.mean_mode() == std::complex<double>{0.3, 0.0});
  REQUIRE(my.mean_mode() == std::complex<double>{-0.2, 0.0});
  RealField mxr = to_real(mx);
  for (double v : mxr.v) REQUIRE(v == Catch::Approx(0.3).margin(1e-15));

  SpectralField bad(g);
  bad.at(0, 0) = 1.0;
  REQUIRE_THROWS_AS(biot_savart(bad), std::invalid_argument);
}

TEST_CASE("biot_savart output is divergence-free and reproduces the curl") {
  Grid g = make_grid(64, 64);
  RandomFieldSpec spec{g, 12, 1.0, 7u, true};
  SpectralField w = sample_spectral(spec);
  auto [vx, vy] = biot_savart(w);
  SpectralField div = derivative(vx, Axis::x, 1);
  SpectralField dvy = derivative(vy, Axis::y, 1);
  for (std::size_t m = 0; m < div.c.size(); ++m) div.c[m] += dvy.c[m];
  const double h1 = std::sqrt(hs_norm(vx, 1) * hs_norm(vx, 1) +
                              hs_norm(vy, 1) * hs_norm(vy, 1));
  REQUIRE(l2_norm(div) <= 1e-12 * h1);

  SpectralField curl = derivative(vy, Axis::x, 1);
  SpectralField dux = derivative(vx, Axis::y, 1);
  for (std::size_t m = 0; m < curl.c.size(); ++m) curl.c[m] -= dux.c[m];
  SpectralField diff = curl;
  for (std::size_t m = 0; m < diff.c.size(); ++m) diff.c[m] -= w.c[m];
  REQUIRE(l2_norm(dealias(diff)) <= 1e-12 * l2_norm(w));
}

TEST_CASE("dealias zeroes exactly the excluded modes and is idempotent") {
  Grid g = make_grid(64, 64);
  SpectralField f(g);
  f.at(1, 0) = {0.5, 0.25};
  f.at(64 - 1, 0) = std::conj(f.at(1, 0));
  SpectralField kept = dealias(f);
  REQUIRE(testutil::max_coeff_diff(kept, f) == 0.0);

  SpectralField hi(g);
  hi.at(22, 0) = {1.0, -1.0};
  hi.at(64 - 22, 0) = std::conj(hi.at(22, 0));
  SpectralField gone = dealias(hi);
  for (auto& z : gone.c) REQUIRE(std::abs(z) == 0.0);

  RandomFieldSpec spec{g, 21, 0.5, 3u, true};
  SpectralField r = sample_spectral(spec);
  REQUIRE(testutil::max_coeff_diff(dealias(dealias(r)), dealias(r)) == 0.0);
}

TEST_CASE("lp_norm closed forms") {
  Grid g = make_grid(64, 64);
  auto sinx = fill(g, [](double x, double) { return std::sin(x); });
  REQUIRE(lp_norm(sinx, 2.0) == Catch::Approx(pi * std::sqrt(2.0)).epsilon(1e-12));
  // The grid contains the maximizer x = pi/2 when nx is a multiple of 4.
  REQUIRE(lp_norm(sinx, std::numeric_limits<double>::infinity()) ==
          Catch::Approx(1.0).epsilon(1e-14));
  RealField zero(g);
  for (double p : {1.0, 2.0, 3.5, 17.0}) REQUIRE(lp_norm(zero, p) == 0.0);
  REQUIRE(lp_norm(zero, std::numeric_limits<double>::infinity()) == 0.0);
  REQUIRE_THROWS_AS(lp_norm(sinx, 0.5), std::invalid_argument);
}

TEST_CASE("hs_norm closed forms and consistency with lp_norm") {
  Grid g = make_grid(64, 64);
  auto sinx = fill(g, [](double x, double) { return std::sin(x); });
  SpectralField f = transform(sinx);
  REQUIRE(hs_norm(f, 0.0) == Catch::Approx(pi * std::sqrt(2.0)).epsilon(1e-12));
  REQUIRE(hs_norm(f, 1.0) == Catch::Approx(2.0 * pi).epsilon(1e-12));
  SpectralField zero(g);
  for (double s : {0.0, 1.5, 4.0}) REQUIRE(hs_norm(zero, s) == 0.0);
  REQUIRE_THROWS_AS(hs_norm(f, 4.5), std::invalid_argument);
  REQUIRE(hs_norm(f, 0.0) == Catch::Approx(lp_norm(sinx, 2.0)).epsilon(1e-13));
}

TEST_CASE("transform round trip is the identity to 1e-13 relative") {
  Grid g = make_grid(64, 64);
  // Arbitrary (not band-limited) real data from the deterministic hash.
  RealField f(g);
  for (std::size_t m = 0; m < f.v.size(); ++m)
    f.v[m] = 2.0 * mhd2d::detail::unit_interval(mhd2d::detail::splitmix64(m + 99)) - 1.0;
  RealField back = to_real(transform(f));
  REQUIRE(testutil::max_abs_diff(back, f) < 1e-13 * f.max_abs());
}

TEST_CASE("Parseval: collocation L2 equals the spectral sum") {
  Grid g = make_grid(64, 64);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    RealField f = sample_field({g, 20, 0.8, seed, true});
    const double a = lp_norm(f, 2.0);
    const double b = l2_norm(transform(f));
    REQUIRE(a == Catch::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("transform of a real field is conjugate-symmetric, mean mode is the average") {
  Grid g = make_grid(32, 32);
  RealField f = sample_field({g, 10, 0.3, 17u, false});
  f.v[5] += 0.37;  // ensure a nonzero mean
  SpectralField fh = transform(f);
  double cmax = 0.0;
  for (auto& z : fh.c) cmax = std::max(cmax, std::abs(z));
  for (int i = 0; i < g.nx(); ++i) {
    auto a = fh.at(i, 0);
    auto b = std::conj(fh.at((g.nx() - i) % g.nx(), 0));
    REQUIRE(std::abs(a - b) <= 1e-14 * cmax);
  }
  REQUIRE(std::abs(fh.mean_mode() - f.mean()) <= 1e-14);
}

TEST_CASE("normalized lp_norm is nondecreasing in p") {
  Grid g = make_grid(32, 32);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    RealField f = sample_field({g, 8, 1.0, seed, true});
    double prev = 0.0;
    for (double p : {1.0, 2.0, 3.0, 4.0, 8.0, 16.0, 64.0}) {
      double np = lp_norm(f, p) / std::pow(g.area(), 1.0 / p);
      REQUIRE(np >= prev * (1.0 - 1e-12));
      prev = np;
    }
    REQUIRE(lp_norm(f, inf) >= prev * (1.0 - 1e-12));
  }
}

TEST_CASE("sample_field determinism, mean-zero, and band limit") {
  Grid g = make_grid(64, 64);
  RandomFieldSpec spec{g, 5, 2.0, 1234u, true};
  RealField a = sample_field(spec), b = sample_field(spec);
  REQUIRE(testutil::max_abs_diff(a, b) == 0.0);
  REQUIRE(std::abs(a.mean()) < 1e-14);

  SpectralField ah = transform(a);
  for (int i = 0; i < g.nx(); ++i)
    for (int jh = 0; jh < g.nyh(); ++jh) {
      if (std::abs(g.kx_int(i)) > 5 || jh > 5)
        REQUIRE(std::abs(ah.at(i, jh)) < 1e-14);
    }

  // band_limit = 1 activates only the 8 lowest nonconstant modes.
  SpectralField low = sample_spectral({g, 1, 0.0, 5u, true});
  int active = 0;
  for (int i = 0; i < g.nx(); ++i)
    for (int jh = 0; jh < g.nyh(); ++jh)
      if (std::abs(low.at(i, jh)) > 0.0) {
        ++active;
        REQUIRE(std::abs(g.kx_int(i)) <= 1);
        REQUIRE(jh <= 1);
      }
  // Stored half-spectrum: (1,0), (-1,0), (0,1), (1,1), (-1,1) = 5 entries,
  // standing for the 8 physical modes.
  REQUIRE(active == 5);

  REQUIRE_THROWS_AS(sample_field({g, 22, 1.0, 0u, true}), std::invalid_argument);
}

TEST_CASE("same sampling spec on a finer grid yields the same function") {
  Grid g1 = make_grid(64, 64), g2 = make_grid(128, 128);
  SpectralField f1 = sample_spectral({g1, 9, 1.2, 77u, true});
  SpectralField f2 = sample_spectral({g2, 9, 1.2, 77u, true});
  for (int ki = -9; ki <= 9; ++ki)
    for (int kj = -9; kj <= 9; ++kj)
      REQUIRE(std::abs(f1.coefficient(ki, kj) - f2.coefficient(ki, kj)) < 1e-15);
}
