#include "qths/wholespace.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "qths/fft.hpp"
#include "qths/symbols.hpp"

namespace qths {

namespace {

void check_mode_inputs(const std::vector<double>& xi, cplx lambda,
                       const std::vector<cplx>& f_hat, const std::vector<cplx>& G_hat,
                       const SectorParams& params) {
  const int N = params.N;
  if (static_cast<int>(xi.size()) != N) throw std::invalid_argument("xi must have N components");
  if (static_cast<int>(f_hat.size()) != N) throw std::invalid_argument("f_hat must have N components");
  if (static_cast<int>(G_hat.size()) != N * N)
    throw std::invalid_argument("G_hat must have N*N components");
  if (lambda == cplx(0.0, 0.0) || !in_open_sector(lambda, params.epsilon))
    throw std::domain_error("solve_mode: lambda outside the sector");
}

} // namespace

ModeSolution solve_mode(const std::vector<double>& xi, cplx lambda,
                        const std::vector<cplx>& f_hat, const std::vector<cplx>& G_hat,
                        const SectorParams& params) {
  check_mode_inputs(xi, lambda, f_hat, G_hat, params);
  const int N = params.N;
  const double beta = params.beta;
  ModeSolution s;
  s.u.assign(N, cplx(0.0));
  s.Q.assign(N * N, cplx(0.0));

  double x2 = 0.0;
  for (double x : xi) x2 += x * x;

  if (x2 == 0.0) {
    for (int j = 0; j < N; ++j) s.u[j] = f_hat[j] / lambda;
    for (int i = 0; i < N * N; ++i) s.Q[i] = G_hat[i] / (lambda + params.a);
    s.p = 0.0; // zero-mean gauge
    return s;
  }

  const cplx resQ = lambda + x2 + params.a; // (lambda + |xi|^2 + a)
  const cplx P2 = p2(std::sqrt(x2), lambda, params);

  // g = f + beta (|xi|^2+a)/(lambda+|xi|^2+a) * (i Xi G)
  std::vector<cplx> g(N);
  for (int j = 0; j < N; ++j) {
    cplx ixg = 0.0;
    for (int k = 0; k < N; ++k) ixg += cplx(0.0, xi[k]) * G_hat[j * N + k];
    g[j] = f_hat[j] + beta * (x2 + params.a) / resQ * ixg;
  }

  cplx xi_dot_g = 0.0;
  for (int j = 0; j < N; ++j) xi_dot_g += xi[j] * g[j];

  const cplx c = P2 / resQ;
  for (int j = 0; j < N; ++j) s.u[j] = (g[j] - xi[j] * xi_dot_g / x2) / c;
  s.p = -cplx(0.0, 1.0) * xi_dot_g / x2;

  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      const cplx Duhat = 0.5 * (cplx(0.0, xi[k]) * s.u[j] + cplx(0.0, xi[j]) * s.u[k]);
      s.Q[j * N + k] = (G_hat[j * N + k] + beta * Duhat) / resQ;
    }
  return s;
}

ModeSolution oracle_mode_solve(const std::vector<double>& xi, cplx lambda,
                               const std::vector<cplx>& f_hat,
                               const std::vector<cplx>& G_hat, const SectorParams& params) {
  check_mode_inputs(xi, lambda, f_hat, G_hat, params);
  const int N = params.N;
  double x2 = 0.0;
  for (double x : xi) x2 += x * x;
  if (x2 == 0.0) throw std::invalid_argument("oracle_mode_solve: xi must be nonzero");

  const int nu = N + N * N + 1; // u, Q, p
  const int nrows = N + N * N + 1 + N * (N - 1) / 2 + 1;
  Eigen::MatrixXcd Amat = Eigen::MatrixXcd::Zero(nrows, nu);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(nrows);
  auto ui = [&](int j) { return j; };
  auto qi = [&](int j, int k) { return N + j * N + k; };
  const int pi_ = N + N * N;

  int r = 0;
  // momentum rows
  for (int j = 0; j < N; ++j, ++r) {
    Amat(r, ui(j)) = lambda + x2;
    Amat(r, pi_) = cplx(0.0, xi[j]);
    for (int k = 0; k < N; ++k)
      Amat(r, qi(j, k)) = -params.beta * (x2 + params.a) * cplx(0.0, xi[k]);
    b(r) = f_hat[j];
  }
  // Q rows
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k, ++r) {
      Amat(r, qi(j, k)) = lambda + x2 + params.a;
      Amat(r, ui(j)) += -params.beta * 0.5 * cplx(0.0, xi[k]);
      Amat(r, ui(k)) += -params.beta * 0.5 * cplx(0.0, xi[j]);
      b(r) = G_hat[j * N + k];
    }
  // divergence
  for (int j = 0; j < N; ++j) Amat(r, ui(j)) = cplx(0.0, xi[j]);
  ++r;
  // symmetry
  for (int j = 0; j < N; ++j)
    for (int k = j + 1; k < N; ++k, ++r) {
      Amat(r, qi(j, k)) = 1.0;
      Amat(r, qi(k, j)) = -1.0;
    }
  // trace
  for (int j = 0; j < N; ++j) Amat(r, qi(j, j)) = 1.0;
  ++r;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(Amat);
  if (cod.rank() < nu)
    throw std::runtime_error("oracle_mode_solve: singular mode system inside the sector");
  const Eigen::VectorXcd x = cod.solve(b);
  const double res = (Amat * x - b).norm();
  const double bscale = b.norm() + 1e-300;
  if (res > 1e-8 * bscale)
    throw std::runtime_error("oracle_mode_solve: inconsistent mode system");

  ModeSolution s;
  s.u.assign(N, cplx(0.0));
  s.Q.assign(N * N, cplx(0.0));
  for (int j = 0; j < N; ++j) s.u[j] = x(ui(j));
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) s.Q[j * N + k] = x(qi(j, k));
  s.p = x(pi_);
  return s;
}

WholespaceSolution solve_wholespace(const TorusGrid& grid, const VelocityField& f,
                                    const QTensorField& G, cplx lambda,
                                    const SectorParams& params) {
  const int N = params.N;
  if (grid.dim != N) throw std::invalid_argument("solve_wholespace: grid dim mismatch");
  if (f.f.npts != grid.size() || G.f.npts != grid.size())
    throw std::invalid_argument("solve_wholespace: field size mismatch");

  const long sz = grid.size();
  std::vector<int> dims(grid.n.begin(), grid.n.begin() + grid.dim);

  // forward transforms
  VelocityField fh = f;
  QTensorField Gh = G;
  for (int c = 0; c < N; ++c) fft_forward(dims, fh.f.comp(c));
  for (int c = 0; c < N * N; ++c) fft_forward(dims, Gh.f.comp(c));

  WholespaceSolution sol;
  sol.u = VelocityField(N, sz);
  sol.Q = QTensorField(N, sz);
  sol.p = PressureField(sz);

  std::vector<double> xi(N);
  std::vector<cplx> fhat(N), Ghat(N * N);
  double res2 = 0.0, data2 = 0.0;
  for (long m = 0; m < sz; ++m) {
    const auto idx = grid.unflat(m);
    for (int ax = 0; ax < N; ++ax) xi[ax] = grid.freq(ax, idx[ax]);
    for (int c = 0; c < N; ++c) fhat[c] = fh.f.at(c, m);
    for (int c = 0; c < N * N; ++c) Ghat[c] = Gh.f.at(c, m);
    const ModeSolution ms = solve_mode(xi, lambda, fhat, Ghat, params);
    for (int c = 0; c < N; ++c) sol.u.f.at(c, m) = ms.u[c];
    for (int c = 0; c < N * N; ++c) sol.Q.f.at(c, m) = ms.Q[c];
    sol.p.f.at(0, m) = ms.p;

    // spectral residual of both equations at this mode
    double x2 = 0.0;
    for (double x : xi) x2 += x * x;
    for (int j = 0; j < N; ++j) {
      cplx ixQ = 0.0;
      for (int k = 0; k < N; ++k) ixQ += cplx(0.0, xi[k]) * ms.Q[j * N + k];
      const cplx r1 = (lambda + x2) * ms.u[j] + cplx(0.0, xi[j]) * ms.p -
                      params.beta * (x2 + params.a) * ixQ - fhat[j];
      res2 += std::norm(r1);
      data2 += std::norm(fhat[j]);
    }
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        const cplx Du = 0.5 * (cplx(0.0, xi[k]) * ms.u[j] + cplx(0.0, xi[j]) * ms.u[k]);
        const cplx r2 = (lambda + x2 + params.a) * ms.Q[j * N + k] - params.beta * Du -
                        Ghat[j * N + k];
        res2 += std::norm(r2);
        data2 += std::norm(Ghat[j * N + k]);
      }
  }
  sol.residual = std::sqrt(res2) / (std::sqrt(data2) + 1e-300);

  // inverse transforms
  const double inv = 1.0 / static_cast<double>(sz);
  for (int c = 0; c < N; ++c) {
    fft_backward(dims, sol.u.f.comp(c));
    for (long m = 0; m < sz; ++m) sol.u.f.at(c, m) *= inv;
  }
  for (int c = 0; c < N * N; ++c) {
    fft_backward(dims, sol.Q.f.comp(c));
    for (long m = 0; m < sz; ++m) sol.Q.f.at(c, m) *= inv;
  }
  fft_backward(dims, sol.p.f.comp(0));
  for (long m = 0; m < sz; ++m) sol.p.f.at(0, m) *= inv;
  return sol;
}

} // namespace qths
