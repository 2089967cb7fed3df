#include <doctest.h>

#include <cmath>
#include <random>

#include "qths/symbols.hpp"

using namespace qths;

namespace {

SectorParams params_with(double a, double beta, double c0 = 0.25) {
  SectorParams p;
  p.N = 2;
  p.a = a;
  p.beta = beta;
  p.epsilon = M_PI / 3.0;
  p.c0 = c0;
  return p;
}

cplx random_sector_lambda(std::mt19937_64& rng, const SectorParams& p) {
  std::uniform_real_distribution<double> uexp(-6.0, 0.0);
  std::uniform_real_distribution<double> uth(-0.999, 0.999);
  const double r = p.c0 * std::pow(10.0, uexp(rng));
  return std::polar(r, uth(rng) * (M_PI - p.epsilon));
}

} // namespace

TEST_CASE("small-lambda root expansion") {
  const SectorParams p = params_with(1.0, std::sqrt(2.0));
  const SymbolFrame f = eval_frame(cplx(1e-8, 0.0), 0.0, p);
  // z1 ~ lambda/(1+beta^2/2), z2 ~ a
  CHECK(std::abs(f.z1 - cplx(0.5e-8, 0.0)) < 1e-6 * 1e-8 + 1e-14);
  CHECK(std::abs(f.z2 - cplx(1.0, 0.0)) < 1e-6);
}

TEST_CASE("z-product identity over random points") {
  std::mt19937_64 rng(42);
  for (auto [a, beta] : {std::pair{1.0, 0.5}, {1.0, std::sqrt(2.0)}, {0.2, 2.0}}) {
    const SectorParams p = params_with(a, beta, 0.2 * a);
    for (int i = 0; i < 2000; ++i) {
      const cplx lam = random_sector_lambda(rng, p);
      std::uniform_real_distribution<double> uA(-3.0, 3.0);
      const SymbolFrame f = eval_frame(lam, std::pow(10.0, uA(rng)), p);
      const cplx lhs = f.z1 * f.z2 * (1.0 + beta * beta / 2.0);
      const cplx rhs = lam * (lam + a);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + std::abs(rhs)));
    }
  }
}

TEST_CASE("Ba at a benign point") {
  const SectorParams p = params_with(1.0, 0.5, 1.0);
  const cplx lam(0.9, 0.0);
  const SymbolFrame f = eval_frame(lam, 1.0, p);
  CHECK(std::abs(f.Ba - std::sqrt(lam + 2.0)) < 1e-14);
}

TEST_CASE("p2 basics") {
  const SectorParams p = params_with(1.0, 1.0);
  const cplx lam(0.1, 0.05);
  CHECK(std::abs(p2(0.0, lam, p) - lam * (lam + p.a)) < 1e-14);
  // roots annihilate
  const auto pm = lambda_pm(0.7, p);
  CHECK(std::abs(p2(0.7, pm[0], p)) < 1e-10 * std::abs(pm[0] * pm[0]) + 1e-12);
  CHECK(std::abs(p2(0.7, pm[1], p)) < 1e-10 * std::abs(pm[1] * pm[1]) + 1e-12);
}

TEST_CASE("lambda_pm asymptotics") {
  const SectorParams p = params_with(1.0, 1.0);
  {
    const auto pm = lambda_pm(0.0, p);
    CHECK(std::abs(pm[0]) < 1e-14);
    CHECK(std::abs(pm[1] + 1.0) < 1e-14);
  }
  {
    // small |xi|: lambda_+ ~ -(1+beta^2/2)|xi|^2
    const double x = 1e-3;
    const auto pm = lambda_pm(x, p);
    const double lead = -(1.0 + 0.5) * x * x;
    CHECK(std::abs(pm[0] - lead) < 0.1 * std::abs(lead));
  }
  {
    // large |xi|: lambda_pm / |xi|^2 ~ -1 +- i/sqrt(2)
    const double x = 1e3;
    const auto pm = lambda_pm(x, p);
    const cplx r0 = pm[0] / (x * x), r1 = pm[1] / (x * x);
    CHECK(std::abs(r0 - cplx(-1.0, 1.0 / std::sqrt(2.0))) < 0.01 * std::abs(r0));
    CHECK(std::abs(r1 - cplx(-1.0, -1.0 / std::sqrt(2.0))) < 0.01 * std::abs(r1));
  }
}

TEST_CASE("frame identities pass on random points, including A=0") {
  std::mt19937_64 rng(7);
  const SectorParams p = params_with(1.0, 0.5);
  for (int i = 0; i < 5000; ++i) {
    const cplx lam = random_sector_lambda(rng, p);
    std::uniform_real_distribution<double> uA(-3.0, 3.0);
    const double A = (i % 17 == 0) ? 0.0 : std::pow(10.0, uA(rng));
    const IdentityReport rep = check_frame_identities(eval_frame(lam, A, p));
    INFO(rep.worst, " residual ", rep.max_residual);
    CHECK(rep.pass);
  }
}

TEST_CASE("corrupted frame fails the sign check") {
  const SectorParams p = params_with(1.0, 0.5);
  SymbolFrame f = eval_frame(cplx(0.1, 0.02), 1.0, p);
  f.L1 *= -1.0;
  const IdentityReport rep = check_frame_identities(f);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst == "ReL1-positive");
}

TEST_CASE("branch lower bound on Re Ba") {
  std::mt19937_64 rng(11);
  const SectorParams p = params_with(1.0, 0.5);
  for (int i = 0; i < 2000; ++i) {
    const cplx lam = random_sector_lambda(rng, p);
    std::uniform_real_distribution<double> uA(-3.0, 3.0);
    const double A = std::pow(10.0, uA(rng));
    const SymbolFrame f = eval_frame(lam, A, p);
    const double floor = std::sin(p.epsilon / 2.0) *
                         std::sqrt(std::abs(lam + p.a + A * A));
    CHECK(f.Ba.real() >= floor * (1.0 - 1e-12));
  }
}

TEST_CASE("root labeling is continuous along sector paths") {
  const SectorParams p = params_with(1.0, 0.5);
  // radial path
  cplx prev_z1;
  bool first = true;
  for (int k = 0; k <= 200; ++k) {
    const double r = p.c0 * std::pow(2.0, -20.0 * k / 200.0);
    const SymbolFrame f = eval_frame(std::polar(r, 0.7), 1.0, p);
    if (!first) {
      CHECK(std::abs(f.z1 - prev_z1) < 0.2 * (std::abs(prev_z1) + std::abs(f.z1) + 1e-3));
    }
    prev_z1 = f.z1;
    first = false;
  }
  // angular path
  first = true;
  for (int k = 0; k <= 200; ++k) {
    const double span = (M_PI - p.epsilon) * 0.99;
    const double th = -span + 2 * span * k / 200.0;
    const SymbolFrame f = eval_frame(std::polar(p.c0 * 0.5, th), 1.0, p);
    if (!first) {
      CHECK(std::abs(f.z1 - prev_z1) < 0.2 * (std::abs(prev_z1) + std::abs(f.z1)));
    }
    prev_z1 = f.z1;
    first = false;
  }
}

TEST_CASE("sector violation raises") {
  const SectorParams p = params_with(1.0, 0.5);
  CHECK_THROWS_AS(eval_frame(cplx(-0.1, 0.0), 1.0, p), std::domain_error);
  CHECK_THROWS_AS(eval_frame(cplx(2.0 * p.c0, 0.0), 1.0, p), std::domain_error);
}
