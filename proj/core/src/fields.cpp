#include "qths/fields.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qths {

long TorusGrid::size() const {
  long s = 1;
  for (int i = 0; i < dim; ++i) s *= n[i];
  return s;
}

double TorusGrid::freq(int axis, int idx) const {
  const int nn = n[axis];
  const int k = (idx <= nn / 2) ? idx : idx - nn;
  return 2.0 * M_PI * k / period[axis];
}

double TorusGrid::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim; ++i) v *= period[i] / n[i];
  return v;
}

long TorusGrid::flat(const std::array<int, 3>& idx) const {
  long f = 0;
  for (int i = 0; i < dim; ++i) f = f * n[i] + idx[i];
  return f;
}

std::array<int, 3> TorusGrid::unflat(long f) const {
  std::array<int, 3> idx{};
  for (int i = dim - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(f % n[i]);
    f /= n[i];
  }
  return idx;
}

TorusGrid make_torus(int dim, std::array<int, 3> n, std::array<double, 3> period) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("torus dim must be 1..3");
  TorusGrid g;
  g.dim = dim;
  g.n = n;
  g.period = period;
  for (int i = 0; i < dim; ++i) {
    if (g.n[i] < 2 || g.n[i] % 2 != 0)
      throw std::invalid_argument("torus mode counts must be even and >= 2");
    if (!(g.period[i] > 0.0)) throw std::invalid_argument("torus periods must be positive");
  }
  return g;
}

namespace {

// Lagrange basis derivative at node x of the stencil {xs}.
double lagrange_deriv_at(const std::vector<double>& xs, int j, double x) {
  double sum = 0.0;
  for (size_t m = 0; m < xs.size(); ++m) {
    if (static_cast<int>(m) == j) continue;
    double prod = 1.0;
    for (size_t l = 0; l < xs.size(); ++l) {
      if (static_cast<int>(l) == j || l == m) continue;
      prod *= (x - xs[l]) / (xs[j] - xs[l]);
    }
    sum += prod / (xs[j] - xs[m]);
  }
  return sum;
}

// Integral over [a,b] of the Lagrange basis polynomial j on nodes xs.
double lagrange_integral(const std::vector<double>& xs, int j, double a, double b) {
  // integrate by mapping to monomial coefficients (stencils are tiny)
  const int n = static_cast<int>(xs.size());
  std::vector<double> coeff(n, 0.0); // polynomial coefficients of basis j
  coeff[0] = 1.0;
  int deg = 0;
  double denom = 1.0;
  for (int l = 0; l < n; ++l) {
    if (l == j) continue;
    denom *= (xs[j] - xs[l]);
    for (int d = deg; d >= 0; --d) {
      coeff[d + 1] += coeff[d];
      coeff[d] *= -xs[l];
    }
    ++deg;
  }
  double integral = 0.0;
  double pa = a, pb = b;
  for (int d = 0; d <= deg; ++d) {
    integral += coeff[d] * (pb - pa) / (d + 1);
    pa *= a;
    pb *= b;
  }
  return integral / denom;
}

} // namespace

HalfSpaceGrid make_halfspace_grid(int N, std::array<int, 2> tang_n,
                                  std::array<double, 2> tang_period, int M, double xmax,
                                  double grading_ratio) {
  if (N != 2 && N != 3) throw std::invalid_argument("half-space grid: N must be 2 or 3");
  if (M < 8) throw std::invalid_argument("half-space grid: need M >= 8 normal cells");
  if (!(xmax > 0.0)) throw std::invalid_argument("half-space grid: xmax must be positive");
  if (!(grading_ratio >= 1.0)) throw std::invalid_argument("grading ratio must be >= 1");

  HalfSpaceGrid g;
  g.N = N;
  g.tangential = make_torus(N - 1, {tang_n[0], tang_n[1], 0},
                            {tang_period[0], tang_period[1], 0.0});

  g.nodes.resize(M + 1);
  if (grading_ratio == 1.0) {
    for (int j = 0; j <= M; ++j) g.nodes[j] = xmax * j / M;
  } else {
    const double rM = std::pow(grading_ratio, M);
    for (int j = 0; j <= M; ++j)
      g.nodes[j] = xmax * (std::pow(grading_ratio, j) - 1.0) / (rM - 1.0);
  }
  g.nodes.front() = 0.0;
  g.nodes.back() = xmax;
  if (g.nodes[1] - g.nodes[0] > 1e-2 * xmax)
    throw std::invalid_argument("half-space grid: first cell exceeds 1e-2 * xmax");

  // 4th-order quadrature weights: per cell, integrate the cubic Lagrange
  // interpolant on a 4-node stencil clamped to the boundary.
  g.weights.assign(M + 1, 0.0);
  for (int i = 0; i < M; ++i) {
    int s = std::clamp(i - 1, 0, M - 3);
    std::vector<double> xs(g.nodes.begin() + s, g.nodes.begin() + s + 4);
    for (int j = 0; j < 4; ++j)
      g.weights[s + j] += lagrange_integral(xs, j, g.nodes[i], g.nodes[i + 1]);
  }
  return g;
}

std::vector<cplx> HalfSpaceGrid::normal_derivative(const std::vector<cplx>& profile) const {
  const int M = static_cast<int>(nodes.size()) - 1;
  if (static_cast<int>(profile.size()) != M + 1)
    throw std::invalid_argument("normal_derivative: profile size mismatch");
  std::vector<cplx> d(M + 1);
  for (int i = 0; i <= M; ++i) {
    const int s = std::clamp(i - 2, 0, M - 4);
    std::vector<double> xs(nodes.begin() + s, nodes.begin() + s + 5);
    cplx sum = 0.0;
    for (int j = 0; j < 5; ++j) sum += lagrange_deriv_at(xs, j, nodes[i]) * profile[s + j];
    d[i] = sum;
  }
  return d;
}

cplx HalfSpaceGrid::wall_derivative(const std::vector<cplx>& profile) const {
  std::vector<double> xs(nodes.begin(), nodes.begin() + 4);
  cplx sum = 0.0;
  for (int j = 0; j < 4; ++j) sum += lagrange_deriv_at(xs, j, 0.0) * profile[j];
  return sum;
}

double QTensorField::s0_violation() const {
  double scale = 0.0;
  for (const cplx& z : f.v) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (long p = 0; p < f.npts; ++p) {
    cplx tr = 0.0;
    for (int j = 0; j < N; ++j) {
      tr += at(j, j, p);
      for (int k = j + 1; k < N; ++k)
        worst = std::max(worst, std::abs(at(j, k, p) - at(k, j, p)));
    }
    worst = std::max(worst, std::abs(tr));
  }
  return worst / scale;
}

int s0_dim(int N) { return N * (N + 1) / 2 - 1; }

std::vector<double> s0_basis(int N, int c) {
  std::vector<double> b(N * N, 0.0);
  if (N == 2) {
    switch (c) {
      case 0: b[0] = 1.0; b[3] = -1.0; return b;         // diag(1,-1)
      case 1: b[1] = b[2] = 1.0; return b;               // offdiag sym
    }
  } else if (N == 3) {
    switch (c) {
      case 0: b[0] = 1.0; b[8] = -1.0; return b;         // E11 - E33
      case 1: b[4] = 1.0; b[8] = -1.0; return b;         // E22 - E33
      case 2: b[1] = b[3] = 1.0; return b;               // (1,2)
      case 3: b[2] = b[6] = 1.0; return b;               // (1,3)
      case 4: b[5] = b[7] = 1.0; return b;               // (2,3)
    }
  }
  throw std::invalid_argument("s0_basis: bad coordinate");
}

namespace {

const char* kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::Velocity: return "velocity";
    case FieldKind::QTensor: return "qtensor";
    default: return "pressure";
  }
}

FieldKind kind_from(const std::string& s) {
  if (s == "velocity") return FieldKind::Velocity;
  if (s == "qtensor") return FieldKind::QTensor;
  if (s == "pressure") return FieldKind::Pressure;
  throw std::runtime_error("unknown field kind: " + s);
}

} // namespace

void write_field(std::ostream& os, const HalfSpaceGrid& grid, FieldKind kind,
                 const FieldData& data) {
  if (data.npts != grid.size()) throw std::invalid_argument("write_field: size mismatch");
  std::ostringstream head;
  head.precision(17);
  head << "QTHS1 half " << kind_name(kind) << " N=" << grid.N << " comps=" << data.ncomp
       << " tang=" << grid.tangential.n[0];
  if (grid.N == 3) head << "," << grid.tangential.n[1];
  head << " period=" << grid.tangential.period[0];
  if (grid.N == 3) head << "," << grid.tangential.period[1];
  head << " normal=" << grid.normal_size() << "\n";
  os << head.str();
  os.write(reinterpret_cast<const char*>(grid.nodes.data()),
           static_cast<std::streamsize>(grid.nodes.size() * sizeof(double)));
  os.write(reinterpret_cast<const char*>(data.v.data()),
           static_cast<std::streamsize>(data.v.size() * sizeof(cplx)));
  if (!os) throw std::runtime_error("write_field: stream failure");
}

LoadedField read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_field: missing header");
  std::istringstream hs(line);
  std::string magic, domain, kind;
  hs >> magic >> domain >> kind;
  if (magic != "QTHS1" || domain != "half")
    throw std::runtime_error("read_field: bad magic/domain");
  int N = 0, comps = 0;
  long normal = 0;
  std::array<int, 2> tn{0, 0};
  std::array<double, 2> tp{0.0, 0.0};
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("read_field: bad header token");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "N") N = std::stoi(val);
    else if (key == "comps") comps = std::stoi(val);
    else if (key == "normal") normal = std::stol(val);
    else if (key == "tang") {
      const auto comma = val.find(',');
      tn[0] = std::stoi(val.substr(0, comma));
      if (comma != std::string::npos) tn[1] = std::stoi(val.substr(comma + 1));
    } else if (key == "period") {
      const auto comma = val.find(',');
      tp[0] = std::stod(val.substr(0, comma));
      if (comma != std::string::npos) tp[1] = std::stod(val.substr(comma + 1));
    } else {
      throw std::runtime_error("read_field: unknown header key " + key);
    }
  }
  LoadedField out;
  out.kind = kind_from(kind);
  out.grid.N = N;
  out.grid.tangential = make_torus(N - 1, {tn[0], tn[1], 0}, {tp[0], tp[1], 0.0});
  out.grid.nodes.resize(normal);
  is.read(reinterpret_cast<char*>(out.grid.nodes.data()),
          static_cast<std::streamsize>(normal * sizeof(double)));
  out.data = FieldData(comps, out.grid.size());
  is.read(reinterpret_cast<char*>(out.data.v.data()),
          static_cast<std::streamsize>(out.data.v.size() * sizeof(cplx)));
  if (!is) throw std::runtime_error("read_field: truncated payload");
  // rebuild the quadrature weights for the loaded nodes
  const int M = static_cast<int>(out.grid.nodes.size()) - 1;
  HalfSpaceGrid tmp = out.grid;
  out.grid.weights.assign(M + 1, 0.0);
  for (int i = 0; i < M; ++i) {
    int s = std::clamp(i - 1, 0, M - 3);
    std::vector<double> xs(tmp.nodes.begin() + s, tmp.nodes.begin() + s + 4);
    for (int j = 0; j < 4; ++j)
      out.grid.weights[s + j] += lagrange_integral(xs, j, tmp.nodes[i], tmp.nodes[i + 1]);
  }
  return out;
}

void write_field_file(const std::string& path, const HalfSpaceGrid& grid, FieldKind kind,
                      const FieldData& data) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_field(os, grid, kind, data);
}

LoadedField read_field_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_field(is);
}

} // namespace qths
