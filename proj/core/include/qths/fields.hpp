#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "qths/sector.hpp"

namespace qths {

/// Uniform periodic grid in N axes; frequencies are 2*pi*k/L with
/// k in [-n/2, n/2).
struct TorusGrid {
  int dim = 0;
  std::array<int, 3> n{};
  std::array<double, 3> period{};

  long size() const;
  double freq(int axis, int idx) const;
  double cell_volume() const;
  /// Row-major flattening helpers.
  long flat(const std::array<int, 3>& idx) const;
  std::array<int, 3> unflat(long f) const;
};

TorusGrid make_torus(int dim, std::array<int, 3> n, std::array<double, 3> period);

/// Half-space grid: tangential torus (N-1 axes) times a graded normal axis
/// 0 = x_0 < ... < x_M = x_max with geometric grading toward the wall.
struct HalfSpaceGrid {
  int N = 2;
  TorusGrid tangential;         // dim = N-1
  std::vector<double> nodes;    // M+1 normal nodes
  std::vector<double> weights;  // 4th-order quadrature weights per node

  long tang_size() const { return tangential.size(); }
  long normal_size() const { return static_cast<long>(nodes.size()); }
  long size() const { return tang_size() * normal_size(); }
  double xmax() const { return nodes.back(); }

  /// Derivative of grid data in the normal direction at every node
  /// (5-point Lagrange stencils, 4th order, one-sided at the ends).
  std::vector<cplx> normal_derivative(const std::vector<cplx>& profile) const;
  /// Derivative stencil applied at the wall node only.
  cplx wall_derivative(const std::vector<cplx>& profile) const;
};

HalfSpaceGrid make_halfspace_grid(int N, std::array<int, 2> tang_n,
                                  std::array<double, 2> tang_period, int M, double xmax,
                                  double grading_ratio = 1.02);

/// Complex multi-component field; components stored contiguously
/// ([comp][point], point layout defined by the owning grid).
struct FieldData {
  int ncomp = 0;
  long npts = 0;
  std::vector<cplx> v;

  FieldData() = default;
  FieldData(int ncomp_, long npts_) : ncomp(ncomp_), npts(npts_), v(ncomp_ * npts_) {}
  cplx* comp(int c) { return v.data() + static_cast<long>(c) * npts; }
  const cplx* comp(int c) const { return v.data() + static_cast<long>(c) * npts; }
  cplx& at(int c, long p) { return v[static_cast<long>(c) * npts + p]; }
  const cplx& at(int c, long p) const { return v[static_cast<long>(c) * npts + p]; }
};

/// N-vector field.
struct VelocityField {
  int N = 0;
  FieldData f;
  VelocityField() = default;
  VelocityField(int N_, long npts) : N(N_), f(N_, npts) {}
};

/// Matrix field with pointwise symmetric-traceless invariant.
struct QTensorField {
  int N = 0;
  FieldData f; // ncomp = N*N, component (j,k) at j*N+k
  QTensorField() = default;
  QTensorField(int N_, long npts) : N(N_), f(N_ * N_, npts) {}
  cplx& at(int j, int k, long p) { return f.at(j * N + k, p); }
  const cplx& at(int j, int k, long p) const { return f.at(j * N + k, p); }
  /// Largest pointwise |Q - Q^T| or |tr Q| relative to the field scale.
  double s0_violation() const;
};

struct PressureField {
  FieldData f;
  PressureField() = default;
  explicit PressureField(long npts) : f(1, npts) {}
};

/// Independent S0 coordinates: a basis of the symmetric traceless matrices.
/// N=2: dim 2; N=3: dim 5.
int s0_dim(int N);
/// basis matrix entries for coordinate c (row-major N*N).
std::vector<double> s0_basis(int N, int c);

enum class FieldKind { Velocity, QTensor, Pressure };

/// File format "QTHS1": one structured-text header line, then (for half-space
/// fields) the normal nodes, then raw little-endian (re, im) doubles in
/// [comp][tangential row-major][normal] order.
void write_field(std::ostream& os, const HalfSpaceGrid& grid, FieldKind kind,
                 const FieldData& data);
struct LoadedField {
  HalfSpaceGrid grid;
  FieldKind kind = FieldKind::Velocity;
  FieldData data;
};
LoadedField read_field(std::istream& is);

void write_field_file(const std::string& path, const HalfSpaceGrid& grid, FieldKind kind,
                      const FieldData& data);
LoadedField read_field_file(const std::string& path);

} // namespace qths
