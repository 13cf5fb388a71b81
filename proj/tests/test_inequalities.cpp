#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mhd2d/inequalities.hpp"
#include "test_util.hpp"

using namespace mhd2d;
using testutil::fill;

namespace {
const double pi = std::acos(-1.0);

RealField scaled(const RealField& f, double lambda) {
  RealField out = f;
  for (double& v : out.v) v *= lambda;
  return out;
}
}  // namespace

TEST_CASE("trilinear_aniso closed-form spot check: f=g=h=sin x sin y") {
  Grid g = make_grid(256, 256);
  RealField f = fill(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  const double ratio = check_trilinear_aniso(f, f, f);
  const double expected = (64.0 / 9.0) / std::pow(pi, 3);
  // The |sin|^3 quadrature is not band-limited; 256^2 resolves it to ~1e-9.
  REQUIRE(ratio == Catch::Approx(expected).epsilon(1e-7));
}

TEST_CASE("interp_1d closed form: F = sin x gives 1/(sqrt(2) sqrt(pi))") {
  const int n = 128;
  Profile1d F;
  F.length = two_pi;
  F.v.resize(n);
  for (int i = 0; i < n; ++i) F.v[i] = std::sin(two_pi * i / n);
  const double ratio = check_interp_1d(F);
  REQUIRE(ratio == Catch::Approx(1.0 / (std::sqrt(2.0) * std::sqrt(pi))).epsilon(1e-12));
  REQUIRE(ratio <= 1.0);
}

TEST_CASE("interp_1d holds with its explicit constant over a campaign") {
  Grid g = make_grid(64, 64);
  RandomFieldSpec family{g, 10, 1.0, 2024u, true};
  InequalityReport rep = run_campaign(InequalityKind::interp_1d, family, 200);
  REQUIRE(rep.n_valid == 200);
  REQUIRE(rep.max_ratio <= 1.0 + 1e-12);
  REQUIRE(rep.max_ratio >= rep.median_ratio);
  REQUIRE(rep.median_ratio >= 0.0);
}

TEST_CASE("degenerate inputs are rejected with a dedicated error") {
  Grid g = make_grid(32, 32);
  RealField zero(g);
  REQUIRE_THROWS_AS(check_ladyzhenskaya(zero), DegenerateInput);
  REQUIRE_THROWS_AS(check_trilinear_aniso(zero, zero, zero), DegenerateInput);
  REQUIRE_THROWS_AS(check_slice_sup(zero), DegenerateInput);
}

TEST_CASE("log_sobolev: sin x has a finite ratio and exact even-power norms") {
  Grid g = make_grid(128, 128);
  RealField f = fill(g, [](double x, double) { return std::sin(x); });
  // |sin|^4 is band-limited, so the collocation L4 norm is exact.
  REQUIRE(lp_norm(f, 4.0) ==
          Catch::Approx(std::pow(1.5 * pi * pi, 0.25)).epsilon(1e-12));
  const double ratio = check_log_sobolev(f);
  REQUIRE(std::isfinite(ratio));
  REQUIRE(ratio > 0.0);
}

TEST_CASE("ladyzhenskaya ratio for sin x sin y") {
  Grid g = make_grid(64, 64);
  RealField f = fill(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  // |f|_4 = (pi^2 9/16 ... ) computed via the exact band-limited quadrature;
  // |f|_2 = pi, |grad f|_2 = sqrt(2) pi.
  const double l4 = lp_norm(f, 4.0);
  const double expected = l4 / (std::sqrt(pi) * std::sqrt(std::sqrt(2.0) * pi));
  REQUIRE(check_ladyzhenskaya(f) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("commutator vanishes for constant advecting fields") {
  Grid g = make_grid(64, 64);
  RealField c1(g), c2(g);
  for (double& v : c1.v) v = 0.7;
  for (double& v : c2.v) v = -1.3;
  RealField gfield = sample_field({g, 10, 1.0, 31u, true});
  // Analytically zero; the FFT round trip leaves ~1e-12 relative noise.
  REQUIRE(check_commutator(c1, c2, gfield) <= 1e-11);
}

TEST_CASE("commutator validates the multi-index and exponent relations") {
  Grid g = make_grid(32, 32);
  RealField f = sample_field({g, 5, 1.0, 1u, true});
  CommutatorOptions bad_beta;
  bad_beta.beta_x = 1;
  bad_beta.beta_y = 1;
  REQUIRE_THROWS_AS(check_commutator(f, f, f, bad_beta), std::invalid_argument);
  CommutatorOptions bad_p;
  bad_p.p1 = 4.0;  // 1/2 != 1/4 + 3/8
  REQUIRE_THROWS_AS(check_commutator(f, f, f, bad_p), std::invalid_argument);
}

TEST_CASE("scaling neutrality of the homogeneous ratios") {
  Grid g = make_grid(64, 64);
  RealField a = sample_field({g, 8, 1.5, 5u, true});
  RealField b = sample_field({g, 8, 1.5, 6u, true});
  RealField c = sample_field({g, 8, 1.5, 7u, true});
  for (double lambda : {1e-3, 1e3}) {
    REQUIRE(check_trilinear_aniso(scaled(a, lambda), scaled(b, lambda), scaled(c, lambda)) ==
            Catch::Approx(check_trilinear_aniso(a, b, c)).epsilon(1e-12));
    REQUIRE(check_slice_sup(scaled(a, lambda)) ==
            Catch::Approx(check_slice_sup(a)).epsilon(1e-12));
    REQUIRE(check_dp_linfty_x(scaled(a, lambda)) ==
            Catch::Approx(check_dp_linfty_x(a)).epsilon(1e-12));
    REQUIRE(check_dp_linfty_y(scaled(a, lambda)) ==
            Catch::Approx(check_dp_linfty_y(a)).epsilon(1e-12));
    REQUIRE(check_ladyzhenskaya(scaled(a, lambda)) ==
            Catch::Approx(check_ladyzhenskaya(a)).epsilon(1e-12));
    REQUIRE(check_commutator(scaled(a, lambda), scaled(b, lambda), scaled(c, lambda)) ==
            Catch::Approx(check_commutator(a, b, c)).epsilon(1e-12));
    // log_sobolev is not scale-invariant; it must stay finite instead.
    REQUIRE(std::isfinite(check_log_sobolev(scaled(a, lambda))));
  }
}

TEST_CASE("campaigns are deterministic; n = 1 collapses max and median") {
  Grid g = make_grid(64, 64);
  RandomFieldSpec family{g, 10, 1.0, 99u, true};
  InequalityReport r1 = run_campaign(InequalityKind::slice_sup, family, 64);
  InequalityReport r2 = run_campaign(InequalityKind::slice_sup, family, 64, 1);
  REQUIRE(r1.max_ratio == r2.max_ratio);
  REQUIRE(r1.median_ratio == r2.median_ratio);
  REQUIRE(r1.argmax_seed == r2.argmax_seed);

  InequalityReport single = run_campaign(InequalityKind::ladyzhenskaya, family, 1);
  REQUIRE(single.max_ratio == single.median_ratio);
}

TEST_CASE("campaign max_ratio is resolution-stable under grid doubling") {
  RandomFieldSpec fam64{make_grid(64, 64), 10, 1.5, 7u, true};
  RandomFieldSpec fam128{make_grid(128, 128), 10, 1.5, 7u, true};
  for (InequalityKind kind : {InequalityKind::slice_sup, InequalityKind::ladyzhenskaya,
                              InequalityKind::trilinear_aniso}) {
    InequalityReport lo = run_campaign(kind, fam64, 40);
    InequalityReport hi = run_campaign(kind, fam128, 40);
    REQUIRE(std::abs(hi.max_ratio - lo.max_ratio) <= 0.05 * lo.max_ratio);
  }
}

TEST_CASE("campaign with only degenerate samples reports an error") {
  Grid g = make_grid(32, 32);
  RandomFieldSpec family{g, 0, 1.0, 3u, true};  // band limit 0: zero fields
  REQUIRE_THROWS_AS(run_campaign(InequalityKind::ladyzhenskaya, family, 8),
                    std::runtime_error);
}

TEST_CASE("kind names round-trip") {
  for (InequalityKind k :
       {InequalityKind::trilinear_aniso, InequalityKind::interp_1d,
        InequalityKind::slice_sup, InequalityKind::dp_linfty_x,
        InequalityKind::dp_linfty_y, InequalityKind::log_sobolev,
        InequalityKind::ladyzhenskaya, InequalityKind::commutator})
    REQUIRE(inequality_kind_from_string(to_string(k)) == k);
  REQUIRE_THROWS_AS(inequality_kind_from_string("nope"), std::invalid_argument);
}
