#include <doctest.h>

#include <cmath>
#include <vector>

#include "nullwave/error.hpp"
#include "nullwave/profiles.hpp"

using namespace nullwave;
using namespace nullwave::profiles;

TEST_SUITE("profiles") {

TEST_CASE("phi_L on the axis and at a generic point") {
  CHECK(eval_phi_L({1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eval_phi_L({2.0, 2.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(phi_L({1.0, 1.0}).regime == Regime::axis_limit_series);
  // high-precision value of 2/(e-1)
  CHECK(std::abs(eval_phi_L({1.0, std::exp(1.0)}) - 1.163953413738652848770) < 1e-14);
}

TEST_CASE("psi_L values") {
  const double e = std::exp(1.0);
  CHECK(std::abs(eval_psi_L({e, e})) < 1e-15);
  CHECK(std::abs(eval_psi_L({e, e * e}) - 0.04162430854891295012641) < 1e-14);
  // close to the axis the series branch carries the value; v - u holds the
  // rounding of e + 2e-8 (relative 2e-8), which the value inherits
  const double v = e + 2e-8;
  CHECK(eval_psi_L({e, v}) == doctest::Approx(9.957413551468530713886e-10).epsilon(5e-8));
  CHECK(eval_psi_L({e, v}) == doctest::Approx(9.957413551468530713886e-10 * (v - e) / 2e-8).epsilon(1e-12));
}

TEST_CASE("psi_L tends to (ln u)/(u r) for large v") {
  const double u = 5.0;
  for (double v : {1e6, 1e8}) {
    const double r = 0.5 * (v - u);
    const double asym = std::log(u) / (u * r);
    CHECK(eval_psi_L({u, v}) == doctest::Approx(asym).epsilon(3.0 * std::log(v) / v * u / std::log(u)));
  }
}

TEST_CASE("series and direct branches meet at the switch") {
  for (double u : {1.5, 3.0, 40.0}) {
    const double x = kSeriesThreshold;
    const double lo = u + 2.0 * u * x * (1.0 - 1e-9);
    const double hi = u + 2.0 * u * x * (1.0 + 1e-9);
    CHECK(eval_phi_L({u, lo}) == doctest::Approx(eval_phi_L({u, hi})).epsilon(1e-12));
    CHECK(eval_psi_L({u, lo}) == doctest::Approx(eval_psi_L({u, hi})).epsilon(1e-11));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval_phi_L({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(eval_phi_L({2.0, 1.0}), DomainError);
  CHECK_THROWS_AS(eval_psi_L({1.0, 3.0}), DomainError);
  CHECK_THROWS_AS(eval_D_ell(-1, 1.0), DomainError);
  CHECK_THROWS_AS(eval_D_ell(0, 0.0), DomainError);
}

TEST_CASE("D_0 closed form on 100 log-spaced points") {
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double z = std::pow(10.0, -3.0 + 6.0 * n / 99.0);
    worst = std::max(worst, std::abs(eval_D_ell(0, z) - std::log((2.0 + z) / z)));
  }
  CHECK(worst <= 1e-10);
  CHECK(eval_D_ell(0, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("D_0 at z = u/r equals r phi_L") {
  for (double u : {1.0, 7.0, 50.0}) {
    for (double r : {0.3, 4.0, 200.0}) {
      const double v = u + 2.0 * r;
      CHECK(eval_D_ell(0, u / r) == doctest::Approx(r * eval_phi_L({u, v})).epsilon(1e-10));
    }
  }
}

TEST_CASE("D_ell against high-precision quadrature") {
  CHECK(std::abs(eval_D_ell(1, 1.0) - 0.197224577336219382790490) < 1e-11);
  CHECK(std::abs(eval_D_ell(1, 2.0) - 0.0794415416798359282517) < 1e-11);
  CHECK(std::abs(eval_D_ell(2, 1.0) - 0.0423675876746033026738) < 1e-11);
  CHECK(std::abs(eval_D_ell(1, 0.5) - 0.414156868651150561901) < 1e-11);
}

TEST_CASE("D_ell is positive and strictly decreasing") {
  for (int ell = 0; ell <= 4; ++ell) {
    double prev = INFINITY;
    for (int n = 0; n < 60; ++n) {
      const double z = std::pow(10.0, -3.0 + 6.0 * n / 59.0);
      const double d = eval_D_ell(ell, z);
      CHECK(d > 0.0);
      CHECK(d < prev);
      prev = d;
    }
  }
}

TEST_CASE("D_ell large-z coefficient and small-z growth") {
  for (int ell = 0; ell <= 3; ++ell) {
    const double K = D_ell_large_z_coefficient(ell);
    // 2^{l+1} B(l+1, l+1)
    const double expect = std::pow(2.0, ell + 1) * std::tgamma(ell + 1.0) * std::tgamma(ell + 1.0) /
                          std::tgamma(2.0 * ell + 2.0);
    CHECK(K == doctest::Approx(expect).epsilon(1e-14));
    const double z = 1e4;
    CHECK(std::pow(z, ell + 1) * eval_D_ell(ell, z) == doctest::Approx(K).epsilon(1e-3));
    // logarithmic as z -> 0
    const double a = eval_D_ell(ell, 1e-6), b = eval_D_ell(ell, 1e-7);
    CHECK(b - a == doctest::Approx(std::log(10.0)).epsilon(1e-3));
  }
}

TEST_CASE("higher-mode profile") {
  CHECK(higher_mode_profile(1, 0.0, 3.0, 2.0) == 0.0);
  const double C = 0.7, r = 5.0;
  CHECK(higher_mode_profile(1, C, r, r) == doctest::Approx(C * eval_D_ell(1, 1.0) / (2.0 * r)).epsilon(1e-14));
  // l = 0 path agrees with c1 phi_L for C = 2 c1
  const double c1 = 0.3, u = 9.0;
  CHECK(higher_mode_profile(0, 2.0 * c1, u, r) == doctest::Approx(c1 * eval_phi_L({u, u + 2.0 * r})).epsilon(1e-10));
}

TEST_CASE("phi_L^2 <= K psi_L / ln u for u >= 8") {
  // sampled sup over u in [8, 1e4], r in [1e-3, 1e6] is 3.85236 (axis end, u = 8)
  double sup = 0.0;
  for (int a = 0; a < 40; ++a) {
    const double u = 8.0 * std::pow(1250.0, a / 39.0);
    for (int b = 0; b < 60; ++b) {
      const double r = std::pow(10.0, -3.0 + 9.0 * b / 59.0);
      const Point p{u, u + 2.0 * r};
      const double q = eval_phi_L(p) * eval_phi_L(p) * std::log(u) / eval_psi_L(p);
      sup = std::max(sup, q);
    }
  }
  CHECK(sup == doctest::Approx(3.8523638714).epsilon(1e-9));
  CHECK(sup <= 3.86);
}

}
