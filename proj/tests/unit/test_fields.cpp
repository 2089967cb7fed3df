#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qths/fields.hpp"

using namespace qths;

TEST_CASE("torus frequencies") {
  const TorusGrid g = make_torus(2, {8, 4, 0}, {2 * M_PI, M_PI, 0.0});
  CHECK(g.size() == 32);
  CHECK(g.freq(0, 0) == 0.0);
  CHECK(g.freq(0, 1) == doctest::Approx(1.0));
  CHECK(g.freq(0, 7) == doctest::Approx(-1.0));
  CHECK(g.freq(1, 1) == doctest::Approx(2.0));
  CHECK_THROWS(make_torus(2, {7, 4, 0}, {1.0, 1.0, 0.0})); // odd count
}

TEST_CASE("graded half-space grid invariants") {
  const HalfSpaceGrid g = make_halfspace_grid(2, {16, 0}, {2 * M_PI, 0.0}, 256, 16.0);
  CHECK(g.nodes.size() == 257);
  CHECK(g.nodes.front() == 0.0);
  CHECK(g.nodes.back() == doctest::Approx(16.0));
  for (size_t i = 0; i + 1 < g.nodes.size(); ++i) CHECK(g.nodes[i] < g.nodes[i + 1]);
  CHECK(g.nodes[1] - g.nodes[0] <= 1e-2 * 16.0);
  // weights integrate smooth decaying profiles to 4th-order accuracy
  double got = 0.0;
  for (size_t i = 0; i < g.nodes.size(); ++i) got += g.weights[i] * std::exp(-g.nodes[i]);
  CHECK(got == doctest::Approx(1.0 - std::exp(-16.0)).epsilon(1e-7));
}

TEST_CASE("normal derivative is 4th order on the graded grid") {
  const HalfSpaceGrid g = make_halfspace_grid(2, {8, 0}, {2 * M_PI, 0.0}, 128, 12.0);
  std::vector<cplx> prof(g.normal_size());
  for (long i = 0; i < g.normal_size(); ++i)
    prof[i] = std::exp(-1.3 * g.nodes[i]) * std::cos(g.nodes[i]);
  const auto d = g.normal_derivative(prof);
  double worst = 0.0;
  for (long i = 0; i < g.normal_size(); ++i) {
    const double x = g.nodes[i];
    const cplx want = std::exp(-1.3 * x) * (-1.3 * std::cos(x) - std::sin(x));
    worst = std::max(worst, std::abs(d[i] - want));
  }
  CHECK(worst < 2e-6);
  CHECK(std::abs(g.wall_derivative(prof) - cplx(-1.3, 0.0)) < 2e-4);
}

TEST_CASE("S0 checks and basis") {
  CHECK(s0_dim(2) == 2);
  CHECK(s0_dim(3) == 5);
  for (int N : {2, 3}) {
    QTensorField Q(N, 4);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int c = 0; c < s0_dim(N); ++c) {
      const auto b = s0_basis(N, c);
      const cplx amp(g(rng), g(rng));
      for (long p = 0; p < 4; ++p)
        for (int i = 0; i < N * N; ++i) Q.f.at(i, p) += amp * b[i];
    }
    CHECK(Q.s0_violation() < 1e-14);
    Q.at(0, 0, 1) += 0.5; // break the trace
    CHECK(Q.s0_violation() > 1e-3);
  }
}

TEST_CASE("field file round trip") {
  const HalfSpaceGrid g = make_halfspace_grid(2, {8, 0}, {2 * M_PI, 0.0}, 32, 8.0, 1.15);
  FieldData data(2, g.size());
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gg;
  for (auto& z : data.v) z = cplx(gg(rng), gg(rng));
  std::stringstream ss;
  write_field(ss, g, FieldKind::Velocity, data);
  const LoadedField back = read_field(ss);
  CHECK(back.kind == FieldKind::Velocity);
  CHECK(back.grid.N == 2);
  CHECK(back.grid.nodes == g.nodes);
  CHECK(back.data.v == data.v); // bit-exact
}
