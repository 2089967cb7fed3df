#include <doctest.h>

#include <cmath>
#include <random>

#include "qths/fft.hpp"
#include "qths/symbols.hpp"
#include "qths/wholespace.hpp"

using namespace qths;

namespace {

SectorParams wp(int N = 2) {
  SectorParams p;
  p.N = N;
  p.a = 1.0;
  p.beta = 0.7;
  p.epsilon = M_PI / 3.0;
  p.c0 = 0.25;
  return p;
}

std::vector<cplx> random_s0(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> Q(N * N, cplx(0.0));
  for (int c = 0; c < s0_dim(N); ++c) {
    const cplx amp(g(rng), g(rng));
    const auto b = s0_basis(N, c);
    for (int i = 0; i < N * N; ++i) Q[i] += amp * b[i];
  }
  return Q;
}

double mode_dev(const ModeSolution& a, const ModeSolution& b) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.u.size(); ++i) {
    num = std::max(num, std::abs(a.u[i] - b.u[i]));
    den = std::max(den, std::abs(a.u[i]));
  }
  for (size_t i = 0; i < a.Q.size(); ++i) {
    num = std::max(num, std::abs(a.Q[i] - b.Q[i]));
    den = std::max(den, std::abs(a.Q[i]));
  }
  num = std::max(num, std::abs(a.p - b.p));
  den = std::max(den, std::abs(a.p));
  return num / (den + 1e-300);
}

} // namespace

TEST_CASE("gradient forcing is absorbed by the pressure") {
  const SectorParams p = wp();
  const std::vector<double> xi{0.7, -0.4};
  const cplx lam(0.1, 0.05);
  std::vector<cplx> f{cplx(0.0), cplx(0.0)};
  // f parallel to xi
  f[0] = cplx(2.0, 1.0) * xi[0];
  f[1] = cplx(2.0, 1.0) * xi[1];
  const std::vector<cplx> G(4, cplx(0.0));
  const ModeSolution s = solve_mode(xi, lam, f, G, p);
  for (int j = 0; j < 2; ++j) CHECK(std::abs(s.u[j]) < 1e-14);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(s.Q[i]) < 1e-14);
  const double x2 = xi[0] * xi[0] + xi[1] * xi[1];
  cplx xif = xi[0] * f[0] + xi[1] * f[1];
  CHECK(std::abs(s.p - (-cplx(0.0, 1.0) * xif / x2)) < 1e-14);
}

TEST_CASE("transverse forcing gives the resolvent multiplier") {
  const SectorParams p = wp();
  const std::vector<double> xi{0.7, -0.4};
  const cplx lam(0.1, 0.05);
  // f perp to xi
  std::vector<cplx> f{cplx(-xi[1], 0.0), cplx(xi[0], 0.0)};
  const std::vector<cplx> G(4, cplx(0.0));
  const ModeSolution s = solve_mode(xi, lam, f, G, p);
  const double x2 = xi[0] * xi[0] + xi[1] * xi[1];
  const cplx mult = (lam + x2 + p.a) / p2(std::sqrt(x2), lam, p);
  for (int j = 0; j < 2; ++j) CHECK(std::abs(s.u[j] - mult * f[j]) < 1e-12 * std::abs(mult));
  CHECK(std::abs(s.p) < 1e-14);
}

TEST_CASE("mode solve agrees with the dense oracle") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int N : {2, 3}) {
    const SectorParams p = wp(N);
    int stiff_checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> xi(N);
      const double mag = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 3.0)(rng));
      double n2 = 0.0;
      for (auto& x : xi) {
        x = g(rng);
        n2 += x * x;
      }
      for (auto& x : xi) x *= mag / std::sqrt(n2);
      const cplx lam = std::polar(
          p.c0 * std::pow(10.0, std::uniform_real_distribution<double>(-4.0, 0.0)(rng)),
          std::uniform_real_distribution<double>(-0.999, 0.999)(rng) * (M_PI - p.epsilon));
      std::vector<cplx> f(N);
      for (auto& v : f) v = cplx(g(rng), g(rng));
      const auto G = random_s0(N, rng);
      const ModeSolution a = solve_mode(xi, lam, f, G, p);
      const ModeSolution b = oracle_mode_solve(xi, lam, f, G, p);
      const double tol = (mag > 100.0) ? 1e-7 : 1e-9;
      if (mag > 100.0) ++stiff_checked;
      CHECK(mode_dev(a, b) < tol);
    }
    CHECK(stiff_checked > 0);
  }
}

TEST_CASE("mode solve on the sector boundary ray") {
  const SectorParams p = wp();
  const cplx lam = std::polar(p.c0 / 3, M_PI - p.epsilon - 1e-3);
  std::vector<double> xi{1.0, 2.0};
  std::vector<cplx> f{cplx(1.0, 0.5), cplx(-0.3, 0.2)};
  std::mt19937_64 rng(3);
  const auto G = random_s0(2, rng);
  const ModeSolution a = solve_mode(xi, lam, f, G, p);
  const ModeSolution b = oracle_mode_solve(xi, lam, f, G, p);
  CHECK(mode_dev(a, b) < 1e-9);
}

TEST_CASE("zero-mode decoupling") {
  const SectorParams p = wp();
  const cplx lam(0.1, -0.03);
  std::vector<double> xi{0.0, 0.0};
  std::vector<cplx> f{cplx(1.0, 2.0), cplx(0.5, -0.1)};
  std::mt19937_64 rng(4);
  const auto G = random_s0(2, rng);
  const ModeSolution s = solve_mode(xi, lam, f, G, p);
  for (int j = 0; j < 2; ++j) CHECK(std::abs(s.u[j] - f[j] / lam) < 1e-14);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(s.Q[i] - G[i] / (lam + p.a)) < 1e-14);
  CHECK(s.p == cplx(0.0, 0.0));
}

TEST_CASE("solve_wholespace on smooth random data") {
  const SectorParams p = wp();
  const TorusGrid grid = make_torus(2, {32, 32, 0}, {2 * M_PI, 2 * M_PI, 0.0});
  const long sz = grid.size();
  VelocityField f(2, sz);
  QTensorField G(2, sz);

  SUBCASE("zero data gives zero") {
    const auto sol = solve_wholespace(grid, f, G, cplx(0.1, 0.02), p);
    for (const cplx& z : sol.u.f.v) CHECK(std::abs(z) == 0.0);
    for (const cplx& z : sol.Q.f.v) CHECK(std::abs(z) == 0.0);
  }

  SUBCASE("smooth data: tiny residual, S0 and divergence preserved, real outputs") {
    for (long m = 0; m < sz; ++m) {
      const auto idx = grid.unflat(m);
      const double x = 2 * M_PI * idx[0] / grid.n[0];
      const double y = 2 * M_PI * idx[1] / grid.n[1];
      const double bump = std::exp(std::cos(x) + std::sin(y) - 2.0);
      f.f.at(0, m) = bump * std::sin(2 * y);
      f.f.at(1, m) = bump * std::cos(x);
      const double q = std::exp(std::sin(x + y) - 1.0);
      G.at(0, 0, m) = q;
      G.at(1, 1, m) = -q;
      G.at(0, 1, m) = 0.3 * bump;
      G.at(1, 0, m) = 0.3 * bump;
    }
    const cplx lam(0.2, 0.0); // real lambda: expect real output fields
    const auto sol = solve_wholespace(grid, f, G, lam, p);
    CHECK(sol.residual < 1e-9);
    CHECK(sol.Q.s0_violation() < 1e-12);
    double max_imag = 0.0;
    for (const cplx& z : sol.u.f.v) max_imag = std::max(max_imag, std::abs(z.imag()));
    for (const cplx& z : sol.Q.f.v) max_imag = std::max(max_imag, std::abs(z.imag()));
    CHECK(max_imag < 1e-12);
    // divergence-free in Fourier: check via spectral differentiation
    VelocityField uh = sol.u;
    std::vector<int> dims{grid.n[0], grid.n[1]};
    fft_forward(dims, uh.f.comp(0));
    fft_forward(dims, uh.f.comp(1));
    double worst = 0.0, scale = 0.0;
    for (long m = 0; m < sz; ++m) {
      const auto idx = grid.unflat(m);
      const cplx div = cplx(0.0, grid.freq(0, idx[0])) * uh.f.at(0, m) +
                       cplx(0.0, grid.freq(1, idx[1])) * uh.f.at(1, m);
      worst = std::max(worst, std::abs(div));
      scale = std::max(scale, std::abs(uh.f.at(0, m)));
    }
    CHECK(worst < 1e-10 * scale);
  }
}
