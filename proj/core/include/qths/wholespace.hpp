#pragma once

#include <vector>

#include "qths/fields.hpp"

namespace qths {

struct ModeSolution {
  std::vector<cplx> u; // N
  std::vector<cplx> Q; // N*N row-major
  cplx p{0.0, 0.0};
};

/// Closed-form solve of one Fourier mode of the whole-space system.
/// xi has N components; G_hat must be symmetric traceless.
/// At xi = 0: u = f/lambda, Q = G/(lambda+a), p = 0.
ModeSolution solve_mode(const std::vector<double>& xi, cplx lambda,
                        const std::vector<cplx>& f_hat, const std::vector<cplx>& G_hat,
                        const SectorParams& params);

/// Independent dense least-norm solve of the same mode system
/// (momentum + Q rows + divergence + symmetry/trace constraints).
/// Throws std::runtime_error if the system is rank-deficient in the sector.
ModeSolution oracle_mode_solve(const std::vector<double>& xi, cplx lambda,
                               const std::vector<cplx>& f_hat,
                               const std::vector<cplx>& G_hat, const SectorParams& params);

struct WholespaceSolution {
  VelocityField u;
  QTensorField Q;
  PressureField p;
  double residual = 0.0; // spectral PDE residual, relative to the data norm
};

/// Mode-wise application of solve_mode on the torus; fields are given on the
/// grid and returned on the grid.
WholespaceSolution solve_wholespace(const TorusGrid& grid, const VelocityField& f,
                                    const QTensorField& G, cplx lambda,
                                    const SectorParams& params);

} // namespace qths
