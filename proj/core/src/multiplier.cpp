#include "qths/multiplier.hpp"

#include <cmath>
#include <sstream>

namespace qths {

std::string to_string(const ClassSpec& spec) {
  std::ostringstream os;
  switch (spec.family) {
    case MFamily::M: os << "M"; break;
    case MFamily::Mtilde: os << "M~"; break;
    case MFamily::Mprime: os << "M'"; break;
  }
  os << "_{" << spec.s << "," << spec.kind << "}";
  if (spec.lambda_power != 0.0) os << " * |lambda|^" << spec.lambda_power;
  os << (spec.capped ? " on capped sector" : " on open sector");
  return os.str();
}

double class_weight(const ClassSpec& spec, cplx lambda, double A, int ord) {
  const double sq = std::sqrt(std::abs(lambda));
  double w = 1.0;
  switch (spec.family) {
    case MFamily::M:
      if (spec.kind == 1) {
        w = std::pow(sq + A, spec.s - ord);
      } else {
        w = std::pow(sq + A, spec.s) * std::pow(A, -static_cast<double>(ord));
      }
      break;
    case MFamily::Mtilde:
      if (spec.kind == 1) {
        w = std::pow(sq + 1.0 + A, spec.s) * std::pow(sq + A, -static_cast<double>(ord));
      } else {
        w = std::pow(sq + 1.0 + A, spec.s) * std::pow(A, -static_cast<double>(ord));
      }
      break;
    case MFamily::Mprime:
      w = std::pow(sq + 1.0 + A, spec.s - ord);
      break;
  }
  if (spec.lambda_power != 0.0) w *= std::pow(std::abs(lambda), spec.lambda_power);
  return w;
}

namespace {

struct Stencil {
  std::vector<std::pair<int, double>> taps; // (offset, coefficient incl. 1/h^order)
};

Stencil central_stencil(int order, double h) {
  Stencil s;
  switch (order) {
    case 0: s.taps = {{0, 1.0}}; break;
    case 1: s.taps = {{-1, -0.5 / h}, {1, 0.5 / h}}; break;
    case 2: s.taps = {{-1, 1.0 / (h * h)}, {0, -2.0 / (h * h)}, {1, 1.0 / (h * h)}}; break;
    case 3: {
      const double h3 = h * h * h;
      s.taps = {{-2, -0.5 / h3}, {-1, 1.0 / h3}, {1, -1.0 / h3}, {2, 0.5 / h3}};
      break;
    }
    default:
      throw std::invalid_argument("d_alpha: per-axis order <= 3 supported");
  }
  return s;
}

bool stencil_in_domain(const SpectralPoint& pt, const std::vector<int>& alpha, double h,
                       double htau, const SectorParams& params) {
  double norm2 = 0.0;
  for (double x : pt.xi) norm2 += x * x;
  const double norm = std::sqrt(norm2);
  double shift = 0.0;
  for (int a : alpha)
    if (a > 0) shift += 2.0 * h;
  if (norm > 0.0 && shift >= 0.9 * norm) return false;
  if (htau > 0.0) {
    if (!in_open_sector(pt.lambda + cplx(0.0, htau), params.epsilon)) return false;
    if (!in_open_sector(pt.lambda - cplx(0.0, htau), params.epsilon)) return false;
  }
  return true;
}

} // namespace

cplx d_alpha(const SymbolFn& m, const SpectralPoint& pt, const std::vector<int>& alpha,
             int ell, const SectorParams& params) {
  const int nt = static_cast<int>(pt.xi.size());
  if (static_cast<int>(alpha.size()) != nt)
    throw std::invalid_argument("d_alpha: alpha size mismatch");
  int total = 0, maxc = 0;
  for (int a : alpha) {
    total += a;
    maxc = std::max(maxc, a);
  }
  if (total > 3) throw std::invalid_argument("d_alpha: |alpha| <= 3 supported");

  const double A = pt.tangential_norm();
  const double sq = std::sqrt(std::abs(pt.lambda));
  const double base = (total >= 3 ? 1e-3 : 1e-4) * std::max(A, sq);
  double h = (A > 0.0) ? std::min(base, 0.05 * A) : base;
  const double tau = pt.lambda.imag();
  double htau = (total >= 3 ? 1e-3 : 1e-4) * std::max(std::abs(tau), sq);

  if (!stencil_in_domain(pt, alpha, h, ell ? htau : 0.0, params)) {
    h /= 16.0;
    htau /= 16.0;
    if (!stencil_in_domain(pt, alpha, h, ell ? htau : 0.0, params))
      throw std::domain_error("d_alpha: stencil exits the evaluation domain");
  }

  auto eval_dalpha = [&](cplx lambda) {
    std::vector<Stencil> st;
    st.reserve(nt);
    for (int j = 0; j < nt; ++j) st.push_back(central_stencil(alpha[j], h));
    cplx sum = 0.0;
    std::vector<size_t> idx(nt, 0);
    while (true) {
      double w = 1.0;
      std::vector<double> xi = pt.xi;
      for (int j = 0; j < nt; ++j) {
        const auto& [off, cc] = st[j].taps[idx[j]];
        w *= cc;
        xi[j] += off * h;
      }
      sum += w * m(lambda, xi);
      int j = 0;
      for (; j < nt; ++j) {
        if (++idx[j] < st[j].taps.size()) break;
        idx[j] = 0;
      }
      if (j == nt) break;
    }
    return sum;
  };

  if (ell == 0) return eval_dalpha(pt.lambda);
  if (tau == 0.0) return cplx(0.0, 0.0); // tau d_tau vanishes on the real axis
  const cplx up = eval_dalpha(pt.lambda + cplx(0.0, htau));
  const cplx dn = eval_dalpha(pt.lambda - cplx(0.0, htau));
  return tau * (up - dn) / (2.0 * htau);
}

namespace {

std::vector<std::vector<int>> multi_indices(int dims, int max_order) {
  std::vector<std::vector<int>> out;
  if (dims == 1) {
    for (int a = 0; a <= max_order; ++a) out.push_back({a});
    return out;
  }
  for (int a1 = 0; a1 <= max_order; ++a1)
    for (int a2 = 0; a2 + a1 <= max_order; ++a2) out.push_back({a1, a2});
  return out;
}

double sup_over_grid(const SymbolFn& m, const ClassSpec& spec, const SectorParams& params,
                     const std::vector<GridPoint>& pts, const std::vector<int>& alpha,
                     int ell, const ClassRegion& region) {
  int ord = 0;
  for (int a : alpha) ord += a;
  double sup = 0.0;
  for (const GridPoint& gp : pts) {
    if (spec.capped && std::abs(gp.lambda) > params.c0) continue;
    if (region.low_A_only && gp.A * gp.A > std::abs(gp.lambda) / region.R) continue;
    SpectralPoint pt;
    pt.lambda = gp.lambda;
    pt.xi.assign(params.N - 1, 0.0);
    pt.xi[0] = gp.A;
    cplx v;
    try {
      v = d_alpha(m, pt, alpha, ell, params);
    } catch (const std::domain_error&) {
      continue;
    }
    sup = std::max(sup, std::abs(v) / class_weight(spec, gp.lambda, gp.A, ord));
  }
  return sup;
}

} // namespace

MembershipReport estimate_class(const std::string& symbol_id, const SymbolFn& m,
                                const ClassSpec& spec, const SectorParams& params,
                                const ScanGrid& grid, int max_order,
                                const ClassRegion& region) {
  MembershipReport rep;
  rep.symbol_id = symbol_id;
  rep.spec = spec;

  // refinement grid: geometric midpoints in |lambda| and |xi'|
  std::vector<GridPoint> fine = grid.points;
  {
    std::vector<cplx> lam2;
    for (size_t i = 0; i + 1 < grid.lambda_samples.size(); ++i) {
      const cplx a = grid.lambda_samples[i], b = grid.lambda_samples[i + 1];
      lam2.push_back(std::polar(std::sqrt(std::abs(a) * std::abs(b)),
                                0.5 * (std::arg(a) + std::arg(b))));
    }
    std::vector<double> xi2;
    for (size_t i = 0; i + 1 < grid.xi_samples.size(); ++i)
      xi2.push_back(std::sqrt(grid.xi_samples[i] * grid.xi_samples[i + 1]));
    for (cplx l : lam2)
      if (in_open_sector(l, params.epsilon))
        for (double A : xi2)
          fine.push_back({l, A, classify_region(l, A, params, grid.r_small, grid.R_large)});
  }

  rep.pass = true;
  for (int ell = 0; ell <= 1; ++ell) {
    for (const auto& alpha : multi_indices(params.N - 1, max_order)) {
      MembershipEntry e;
      e.ell = ell;
      e.alpha = alpha;
      e.sup_coarse = sup_over_grid(m, spec, params, grid.points, alpha, ell, region);
      e.sup_fine = sup_over_grid(m, spec, params, fine, alpha, ell, region);
      const double floor = 1e-12 * (1.0 + e.sup_coarse);
      e.stable = std::isfinite(e.sup_fine) && e.sup_fine <= 2.0 * e.sup_coarse + floor;
      if (!e.stable) rep.pass = false;
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

namespace {

SymbolFn frame_symbol(const SectorParams& params, cplx (*f)(const SymbolFrame&)) {
  return [params, f](cplx lambda, const std::vector<double>& xi) {
    double A2 = 0.0;
    for (double x : xi) A2 += x * x;
    return f(eval_frame(lambda, std::sqrt(A2), params));
  };
}

SymbolFn lop_symbol(const SectorParams& params, cplx (*f)(const LopatinskiFrame&)) {
  return [params, f](cplx lambda, const std::vector<double>& xi) {
    double A2 = 0.0;
    for (double x : xi) A2 += x * x;
    return f(lopatinski_frame(eval_frame(lambda, std::sqrt(A2), params), xi));
  };
}

} // namespace

std::vector<CatalogClaim> catalog(const SectorParams& params) {
  std::vector<CatalogClaim> c;
  auto add = [&](std::string id, SymbolFn fn, MFamily fam, double s, int kind,
                 bool capped = true, double lam_pow = 0.0, ClassRegion region = {}) {
    c.push_back({std::move(id), std::move(fn), ClassSpec{fam, s, kind, capped, lam_pow},
                 region});
  };

  add("A", frame_symbol(params, +[](const SymbolFrame& f) { return cplx(f.A, 0.0); }),
      MFamily::M, 1.0, 2, false);
  add("A^2", frame_symbol(params, +[](const SymbolFrame& f) { return cplx(f.A * f.A, 0.0); }),
      MFamily::M, 2.0, 2, false);
  add("Ba", frame_symbol(params, +[](const SymbolFrame& f) { return f.Ba; }),
      MFamily::Mtilde, 1.0, 1, false);
  add("Ba^-1", frame_symbol(params, +[](const SymbolFrame& f) { return 1.0 / f.Ba; }),
      MFamily::Mtilde, -1.0, 1, false);
  add("L1", frame_symbol(params, +[](const SymbolFrame& f) { return f.L1; }),
      MFamily::M, 1.0, 1);
  add("L1^-1", frame_symbol(params, +[](const SymbolFrame& f) { return 1.0 / f.L1; }),
      MFamily::M, -1.0, 1);
  add("L2", frame_symbol(params, +[](const SymbolFrame& f) { return f.L2; }),
      MFamily::Mtilde, 1.0, 1);
  add("L2^-1", frame_symbol(params, +[](const SymbolFrame& f) { return 1.0 / f.L2; }),
      MFamily::Mtilde, -1.0, 1);

  add("A+Ba", frame_symbol(params, +[](const SymbolFrame& f) { return f.A + f.Ba; }),
      MFamily::Mtilde, 1.0, 2);
  add("(A+Ba)^-1",
      frame_symbol(params, +[](const SymbolFrame& f) { return 1.0 / (f.A + f.Ba); }),
      MFamily::Mtilde, -1.0, 2);
  add("(Ba+L1)^-1",
      frame_symbol(params, +[](const SymbolFrame& f) { return 1.0 / (f.Ba + f.L1); }),
      MFamily::Mtilde, -1.0, 1);
  add("(Ba+L2)^-1",
      frame_symbol(params, +[](const SymbolFrame& f) { return 1.0 / (f.Ba + f.L2); }),
      MFamily::Mtilde, -1.0, 1);
  add("(A+L1)^-1",
      frame_symbol(params, +[](const SymbolFrame& f) { return 1.0 / (f.A + f.L1); }),
      MFamily::M, -1.0, 2);
  add("(A+L2)^-1",
      frame_symbol(params, +[](const SymbolFrame& f) { return 1.0 / (f.A + f.L2); }),
      MFamily::Mtilde, -1.0, 2);

  add("Ba-A", frame_symbol(params, +[](const SymbolFrame& f) { return f.ba_m_a; }),
      MFamily::Mtilde, -1.0, 2);
  add("L2-A", frame_symbol(params, +[](const SymbolFrame& f) { return f.l2_m_a; }),
      MFamily::Mtilde, -1.0, 2);
  add("L2-A (order 0)", frame_symbol(params, +[](const SymbolFrame& f) { return f.l2_m_a; }),
      MFamily::M, 0.0, 2);
  add("L1-Ba", frame_symbol(params, +[](const SymbolFrame& f) { return -f.ba_m_l1; }),
      MFamily::Mtilde, -1.0, 1);
  add("L2-Ba", frame_symbol(params, +[](const SymbolFrame& f) { return -f.ba_m_l2; }),
      MFamily::Mtilde, -1.0, 1);
  add("L1-Ba (order 0)",
      frame_symbol(params, +[](const SymbolFrame& f) { return -f.ba_m_l1; }),
      MFamily::M, 0.0, 1);

  add("(L1-A)/(Ba^2-L1^2)",
      frame_symbol(params, +[](const SymbolFrame& f) { return f.l1_m_a / f.ba2_m_l1sq; }),
      MFamily::M, -1.0, 2);
  add("(L1-A)/(Ba^2-L2^2)",
      frame_symbol(params, +[](const SymbolFrame& f) { return f.l1_m_a / f.ba2_m_l2sq; }),
      MFamily::M, -1.0, 2);
  add("(L2-A)/(Ba^2-L1^2)",
      frame_symbol(params, +[](const SymbolFrame& f) { return f.l2_m_a / f.ba2_m_l1sq; }),
      MFamily::Mtilde, -1.0, 2);
  add("(Ba-A)/(Ba^2-L1^2)",
      frame_symbol(params, +[](const SymbolFrame& f) { return f.ba_m_a / f.ba2_m_l1sq; }),
      MFamily::Mtilde, -1.0, 2);
  add("(Ba-L2)/(Ba^2-L1^2)",
      frame_symbol(params, +[](const SymbolFrame& f) { return f.ba_m_l2 / f.ba2_m_l1sq; }),
      MFamily::Mtilde, -1.0, 1);
  add("l/(l+1)*(L2-A)/(Ba^2-L2^2)",
      frame_symbol(params, +[](const SymbolFrame& f) {
        return f.lambda / (f.lambda + 1.0) * f.l2_m_a / f.ba2_m_l2sq;
      }),
      MFamily::Mtilde, -1.0, 2);
  add("l/(l+1)*(Ba-A)/(Ba^2-L2^2)",
      frame_symbol(params, +[](const SymbolFrame& f) {
        return f.lambda / (f.lambda + 1.0) * f.ba_m_a / f.ba2_m_l2sq;
      }),
      MFamily::Mtilde, -1.0, 2);

  add("lambda*Ca", lop_symbol(params, +[](const LopatinskiFrame& f) { return f.lamCa; }),
      MFamily::M, 0.0, 2);
  add("Ca^-1 (|lambda|^-1 bound)",
      lop_symbol(params, +[](const LopatinskiFrame& f) { return 1.0 / f.Ca; }),
      MFamily::M, 0.0, 2, true, 1.0);
  add("Ca^-1 (|lambda|^-3/2 bound, low-A)",
      lop_symbol(params, +[](const LopatinskiFrame& f) { return 1.0 / f.Ca; }),
      MFamily::M, 0.0, 2, true, 1.5, ClassRegion{true, 16.0});
  add("1/(lambda*Ca)",
      lop_symbol(params, +[](const LopatinskiFrame& f) { return 1.0 / f.lamCa; }),
      MFamily::M, 0.0, 2);

  add("Aa/(lambda+a)",
      lop_symbol(params, +[](const LopatinskiFrame& f) { return f.Aa / f.sym.ba2_m_a2; }),
      MFamily::Mtilde, 2.0, 1);
  add("(lambda+a)/Aa",
      lop_symbol(params, +[](const LopatinskiFrame& f) { return f.sym.ba2_m_a2 / f.Aa; }),
      MFamily::Mtilde, -2.0, 1);

  add("l/(l+1)*E",
      lop_symbol(params, +[](const LopatinskiFrame& f) {
        return f.sym.lambda / (f.sym.lambda + 1.0) * f.E;
      }),
      MFamily::Mtilde, 1.0, 2);
  add("(Ba*L1-A^2)/(lambda+1)",
      lop_symbol(params, +[](const LopatinskiFrame& f) {
        const cplx bl = f.sym.ba_m_a * (f.sym.L1 + f.sym.A) - f.sym.ba_m_l1 * f.sym.A;
        return bl / (f.sym.lambda + 1.0);
      }),
      MFamily::M, 0.0, 2);

  // displayed boundary-coefficient sub-terms (shared with decompose_eh)
  add("eh_m1",
      lop_symbol(params, +[](const LopatinskiFrame& f) {
        const cplx BpL1 = f.sym.Ba + f.sym.L1, BpL2 = f.sym.Ba + f.sym.L2;
        return -(2.0 * (f.sym.Ba * f.sym.Ba * (f.sym.L1 + f.sym.L2) -
                        f.sym.A * f.sym.A * f.sym.Ba + f.sym.L1 * f.sym.L2 * f.sym.Ba) -
                 f.sym.ba2_m_a2 * f.sym.Ba) /
               (BpL1 * BpL2);
      }),
      MFamily::Mtilde, 1.0, 1);
  add("nn_m2 = scrB*A^2",
      lop_symbol(params,
                 +[](const LopatinskiFrame& f) { return f.scrB * f.sym.A * f.sym.A; }),
      MFamily::M, 2.0, 2);
  add("nn_m3 = 2Ba^2/beta",
      lop_symbol(params, +[](const LopatinskiFrame& f) {
        return 2.0 * f.sym.Ba * f.sym.Ba / f.sym.params.beta;
      }),
      MFamily::Mtilde, 2.0, 1);
  add("jn_m4 = -(Ba^2+A^2)scrB/Ba",
      lop_symbol(params, +[](const LopatinskiFrame& f) {
        return -(f.sym.Ba * f.sym.Ba + f.sym.A * f.sym.A) * f.scrB / f.sym.Ba;
      }),
      MFamily::Mtilde, 1.0, 2);
  add("jn_m5 = -4Ba/beta",
      lop_symbol(params, +[](const LopatinskiFrame& f) {
        return -4.0 * f.sym.Ba / f.sym.params.beta;
      }),
      MFamily::Mtilde, 1.0, 1);
  add("jn_m6 = 2Ba/beta",
      lop_symbol(params, +[](const LopatinskiFrame& f) {
        return 2.0 * f.sym.Ba / f.sym.params.beta;
      }),
      MFamily::Mtilde, 1.0, 1);
  add("jl_m7 = scrB",
      lop_symbol(params, +[](const LopatinskiFrame& f) { return f.scrB; }),
      MFamily::M, 0.0, 2);

  return c;
}

EhDecomposition decompose_eh(const LopatinskiFrame& fr, double tol) {
  EhDecomposition out;
  const SymbolFrame& f = fr.sym;
  const double A = f.A;
  const double A2 = A * A;
  const double beta = f.params.beta;
  const cplx Ba = f.Ba, L1 = f.L1, L2 = f.L2;
  const cplx BpL1 = Ba + L1, BpL2 = Ba + L2, BpA = Ba + A;
  const cplx lam_pa = f.lambda + f.params.a;
  const int nt = f.params.N - 1;

  auto add = [&out](std::string name, cplx lhs, cplx rhs) {
    const double s = std::abs(lhs) + std::abs(rhs) + 1e-300;
    out.checks.push_back({std::move(name), std::abs(lhs - rhs) / s});
  };

  const cplx t2num = (L2 * Ba * Ba - A2 * Ba) * f.l1_m_a +
                     (A * L1 * L2 + A * Ba * L1) * (-f.ba_m_a);
  const cplx m0 = 2.0 * A * Ba / (BpA * BpA) - 2.0 * t2num / (f.ba2_m_a2 * BpL1 * BpL2) -
                  (A * Ba + L1 * L2) / (BpL1 * BpL2);
  const cplx m1 =
      -(2.0 * (Ba * Ba * (L1 + L2) - A2 * Ba + L1 * L2 * Ba) - f.ba2_m_a2 * Ba) /
      (BpL1 * BpL2);
  const cplx m2 = fr.scrB * A2;
  const cplx m3 = 2.0 * Ba * Ba / beta;
  const cplx m4 = -(Ba * Ba + A2) * fr.scrB / Ba;
  const cplx m5 = -4.0 * Ba / beta;
  const cplx m6 = 2.0 * Ba / beta;
  const cplx m7 = fr.scrB;
  const cplx m8 = 2.0 / beta;

  for (int k = 0; k < nt; ++k) {
    add("Eh[" + std::to_string(k) + "]", fr.Eh[k],
        fr.ixi[k] * (fr.E / fr.lamCa * m0 + m1 / lam_pa));
    add("EHNN[" + std::to_string(k) + "]", fr.EHNN[k],
        fr.ixi[k] * (m2 / fr.lamCa + m3 / lam_pa));
    for (int j = 0; j < nt; ++j) {
      add("EHjN[" + std::to_string(j) + "][" + std::to_string(k) + "]", fr.EHjN[j][k],
          fr.ixi[j] * fr.ixi[k] * (m4 / fr.lamCa + m5 / lam_pa) +
              (j == k ? m6 : cplx(0.0)));
      for (int l = 0; l < nt; ++l) {
        add("EHjl[" + std::to_string(j) + "][" + std::to_string(k) + "][" +
                std::to_string(l) + "]",
            fr.EHjl[j][k][l],
            fr.ixi[j] * fr.ixi[k] * fr.ixi[l] * (m7 / fr.lamCa + m8 / lam_pa) -
                (k == l ? 2.0 / beta * fr.ixi[j] : cplx(0.0)) -
                (j == k ? 2.0 / beta * fr.ixi[l] : cplx(0.0)));
      }
    }
  }

  out.max_residual = 0.0;
  for (const auto& ch : out.checks) out.max_residual = std::max(out.max_residual, ch.residual);
  out.pass = out.max_residual <= tol;
  return out;
}

} // namespace qths
