#include <doctest.h>

#include <cmath>
#include <vector>

#include "nullwave/error.hpp"
#include "nullwave/grid.hpp"
#include "nullwave/kernels.hpp"

using namespace nullwave;

namespace {
const double kPi = std::acos(-1.0);
const double kSqrt4Pi = std::sqrt(4.0 * kPi);

// Manufactured l = 1 solution Phi = (sin v - sin u) r on the triangle u <= v <= v_max.
double mms_exact(double u, double v) { return (std::sin(v) - std::sin(u)) * 0.5 * (v - u); }
double mms_source(double u, double v) {
  const double r = 0.5 * (v - u);
  const double S = std::sin(v) - std::sin(u);
  // 4 d_u d_v Phi + 2 Phi / r^2
  return -2.0 * (std::cos(u) + std::cos(v)) + 2.0 * S / r;
}

double mms_error(double h) {
  const double u_max = 2.0, v_max = 4.0;
  const int Nu = static_cast<int>(std::lround(u_max / h));
  const int Nv = static_cast<int>(std::lround(v_max / h));
  std::vector<double> cur(Nv + 1), next(Nv + 1);
  for (int j = 0; j <= Nv; ++j) cur[j] = mms_exact(0.0, j * h);
  for (int i = 0; i < Nu; ++i) {
    next[i + 1] = 0.0;
    for (int j = i + 1; j < Nv; ++j) {
      const double u_c = (i + 0.5) * h, v_c = (j + 0.5) * h;
      const double r_c = 0.5 * (j - i) * h;
      next[j + 1] = diamond_cell(cur[j + 1], next[j], cur[j], mms_source(u_c, v_c), 1, r_c, h);
    }
    std::swap(cur, next);
  }
  double err = 0.0;
  for (int j = Nu; j <= Nv; ++j) err = std::max(err, std::abs(cur[j] - mms_exact(u_max, j * h)));
  return err;
}

NullGridSpec small_grid(int L) {
  NullGridSpec g;
  g.h = 0.1;
  g.u_max = 2.0;
  g.v_max = 6.0;
  g.V0 = 2.0;
  g.L_max = L;
  return g;
}

// Rows i and i+1 filled with the (0,0) coefficient of a radial field phi(u, v).
template <class F>
void fill_radial(const NullGridSpec& g, int i, Row& cur, Row& next, F phi) {
  for (int j = 0; j <= g.Nv(); ++j) {
    const double v = g.v(j);
    const double u0 = g.u(i), u1 = g.u(i + 1);
    cur.at(kPhi, 0, j) = v >= u0 ? kSqrt4Pi * 0.5 * (v - u0) * phi(u0, v) : 0.0;
    next.at(kPhi, 0, j) = v >= u1 ? kSqrt4Pi * 0.5 * (v - u1) * phi(u1, v) : 0.0;
  }
}
}  // namespace

TEST_SUITE("scheme") {

TEST_CASE("diamond update is exact for F(u) + G(v) over 1e4 cells") {
  const double h = 0.1;
  const int n = 100;
  auto exact = [&](int i, int j) { return std::sin(3.0 * i * h) + std::cos(2.0 * j * h) + 0.5; };
  std::vector<double> cur(n + 1), next(n + 1);
  for (int j = 0; j <= n; ++j) cur[j] = exact(0, j);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    next[0] = exact(i + 1, 0);
    for (int j = 0; j < n; ++j) next[j + 1] = diamond_cell(cur[j + 1], next[j], cur[j], 0.0, 0, 1.0, h);
    for (int j = 0; j <= n; ++j) worst = std::max(worst, std::abs(next[j] - exact(i + 1, j)));
    std::swap(cur, next);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("single cell isolates the quadrature weight") {
  for (double h : {0.1, 0.05, 0.3}) CHECK(diamond_cell(0.0, 0.0, 0.0, 4.0, 0, 1.0, h) == doctest::Approx(h * h));
}

TEST_CASE("manufactured l = 1 solution converges at second order") {
  const double e1 = mms_error(0.1), e2 = mms_error(0.05), e3 = mms_error(0.025);
  const double p1 = std::log2(e1 / e2), p2 = std::log2(e2 / e3);
  CHECK(p1 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(p2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("row sweep with axis condition transports G(v) - G(u)") {
  NullGridSpec g = small_grid(0);
  KernelContext ctx(g, false);
  const int Nv = g.Nv();
  auto G = [](double v) { return std::exp(-(v - 1.0) * (v - 1.0)) - std::exp(-1.0); };
  Row cur(1, Nv + 1), next(1, Nv + 1), src(1, Nv + 1);
  for (int j = 0; j <= Nv; ++j) cur.at(kPsi, 0, j) = G(g.v(j));
  double worst = 0.0;
  for (int i = 0; i < g.Nu(); ++i) {
    next.fill(0.0);
    diamond_sweep(ctx, i, cur, next, src, true);
    for (int j = i + 1; j <= Nv; ++j) worst = std::max(worst, std::abs(next.at(kPsi, 0, j) - (G(g.v(j)) - G(g.u(i + 1)))));
    std::swap(cur, next);
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("divergence detector") {
  NullGridSpec g = small_grid(0);
  KernelContext ctx(g, false);
  Row cur(1, g.Nv() + 1), next(1, g.Nv() + 1), src(1, g.Nv() + 1);
  cur.at(kPhi, 0, 20) = 2e6;
  CHECK_THROWS_AS(diamond_sweep(ctx, 0, cur, next, src, false), DivergenceError);
}

TEST_CASE("source of phi = t is Q0 = -1") {
  for (int L : {0, 1}) {
    NullGridSpec g = small_grid(L);
    KernelContext ctx(g, true);
    const int M = g.n_modes();
    Row cur(M, g.Nv() + 1), next(M, g.Nv() + 1);
    fill_radial(g, 3, cur, next, [](double u, double v) { return 0.5 * (u + v); });
    CellScratch s(ctx);
    std::vector<double> out(2 * M);
    for (int j : {5, 12, 40}) {
      assemble_cell(ctx, 3, j, cur, next, s, out.data());
      const double r = 0.5 * (j - 3) * g.h;
      CHECK(out[M] == doctest::Approx(-r * kSqrt4Pi).epsilon(1e-12));
      CHECK(std::abs(out[0]) < 1e-14);
      for (int k = 1; k < M; ++k) {
        CHECK(std::abs(out[k]) < 1e-14);
        CHECK(std::abs(out[M + k]) < 1e-13);
      }
    }
  }
}

TEST_CASE("outgoing phi = f(v)/r gives Q0 = -(U phi)(V phi)") {
  NullGridSpec g = small_grid(0);
  g.h = 0.01;
  KernelContext ctx(g, true);
  Row cur(1, g.Nv() + 1), next(1, g.Nv() + 1);
  const int i = 20;
  fill_radial(g, i, cur, next, [](double u, double v) { return std::sin(v) / (0.5 * (v - u)); });
  CellScratch s(ctx);
  double out[2];
  for (int j : {150, 300, 500}) {
    assemble_cell(ctx, i, j, cur, next, s, out);
    const double u = (i + 0.5) * g.h, v = (j + 0.5) * g.h, r = 0.5 * (v - u);
    const double f = std::sin(v), fp = std::cos(v);
    const double Uphi = f / (r * r), Vphi = 2.0 * fp / r - f / (r * r);
    const double expect = -r * kSqrt4Pi * Uphi * Vphi;
    CHECK(out[1] == doctest::Approx(expect).epsilon(1e-3));
  }
}

TEST_CASE("serial and OpenMP row assembly agree bit for bit") {
  NullGridSpec g = small_grid(2);
  KernelContext ctx(g, true);
  const int M = g.n_modes();
  Row cur(M, g.Nv() + 1), next(M, g.Nv() + 1), a(M, g.Nv() + 1), b(M, g.Nv() + 1);
  for (int k = 0; k < M; ++k)
    for (int j = 0; j <= g.Nv(); ++j) {
      cur.at(kPhi, k, j) = std::sin(0.3 * j + k);
      next.at(kPhi, k, j) = std::sin(0.31 * j + k);
      cur.at(kPsi, k, j) = std::cos(0.2 * j - k);
      next.at(kPsi, k, j) = std::cos(0.21 * j - k);
    }
  assemble_row_serial(ctx, 4, cur, next, a);
  assemble_row_omp(ctx, 4, cur, next, b);
  CHECK(a.raw() == b.raw());
}

TEST_CASE("cone data") {
  NullGridSpec g = small_grid(1);
  FieldData d;
  d.amplitude = 0.01;
  d.a = 1.0;
  d.b = 2.0;
  const auto c = cone_coefficients(d, g);
  double peak = 0.0;
  int at = -1;
  for (int j = 0; j <= g.Nv(); ++j) {
    const double val = c[j] / kSqrt4Pi;
    if (val > peak) {
      peak = val;
      at = j;
    }
    for (int k = 1; k < g.n_modes(); ++k) CHECK(c[k * (g.Nv() + 1) + j] == 0.0);
  }
  CHECK(peak == doctest::Approx(0.01 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(g.v(at) == doctest::Approx(1.5));
  CHECK(bump(1.0, 1.0, 2.0) == 0.0);
  CHECK(bump(2.5, 1.0, 2.0) == 0.0);
}

TEST_CASE("grid validation names the field") {
  NullGridSpec g = small_grid(0);
  g.h = 0.07;
  try {
    g.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "grid.v_max");
  }
  g = small_grid(9);
  CHECK_THROWS_AS(g.validate(), ConfigError);
  InitialDataSpec d;
  d.psi.b = 3.0;
  try {
    d.validate(small_grid(0));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "psi.support");
  }
}

}
