#include "qths/lopatinski.hpp"

#include <cmath>
#include <limits>

namespace qths {

namespace {

cplx grouped_lamCa(const SymbolFrame& f) {
  const double A = f.A;
  const double beta = f.params.beta;
  const cplx Ba = f.Ba, L1 = f.L1, L2 = f.L2;
  const double A2 = A * A;
  const cplx BpA = Ba + A;
  const cplx g1 = -beta * A2 * A * f.ba2_m_a2 / (Ba * BpA * BpA);
  const cplx L2AmB2 = A * f.l2_m_a - f.ba2_m_a2; // L2*A - Ba^2 = A(L2-A) - (Ba^2-A^2)
  const cplx g2 = beta * A * f.l1_m_a * f.l2_m_a *
                  (L2AmB2 * f.l1_m_a - L2 * f.ba2_m_a2) /
                  (f.ba2_m_l1sq * f.ba2_m_l2sq);
  const cplx g3 = beta * f.ba_m_a * f.ba_m_a *
                  ((A2 * Ba * Ba + A2 * L1 * L2 + Ba * Ba * L1 * L2 + L2 * L2 * Ba * Ba) *
                       (-f.l1_m_a) +
                   f.ba2_m_l2sq * A * L1 * (L1 + A)) /
                  (2.0 * Ba * f.ba2_m_l1sq * f.ba2_m_l2sq);
  return g1 + g2 + g3;
}

} // namespace

LopatinskiFrame lopatinski_frame(const SymbolFrame& sym, const std::vector<double>& xi) {
  if (!(sym.A > 0.0)) throw std::domain_error("lopatinski_frame: requires A > 0");
  LopatinskiFrame fr;
  fr.sym = sym;
  const int nt = sym.params.N - 1;
  if (static_cast<int>(xi.size()) != nt)
    throw std::invalid_argument("lopatinski_frame: xi must have N-1 components");
  for (int j = 0; j < nt; ++j) fr.ixi[j] = cplx(0.0, xi[j]);

  const double A = sym.A;
  const double A2 = A * A;
  const double beta = sym.params.beta;
  const cplx Ba = sym.Ba, L1 = sym.L1, L2 = sym.L2;
  const cplx Ba2pA2 = Ba * Ba + A2;

  // I1 = beta A^2/(Ba^2-A^2) {2A^2 - A(Ba^2+A^2)/Ba}; the brace equals
  // -A (Ba-A)^2 / Ba in stabilized form.
  fr.I1 = beta * A2 / sym.ba2_m_a2 * (-A * sym.ba_m_a * sym.ba_m_a / Ba);

  const cplx brace1 = 2.0 * A2 * L1 - Ba2pA2 * (L1 * L1 + A2) / (2.0 * Ba);
  const cplx brace2 = 2.0 * A2 * L2 - Ba2pA2 * (L2 * L2 + A2) / (2.0 * Ba);
  fr.I2 = -beta * L1 * sym.l2_m_a / sym.ba2_m_l1sq * brace1 +
          beta * L2 * sym.l1_m_a / sym.ba2_m_l2sq * brace2;

  const bool near_degenerate =
      std::abs(L1 - L2) < 1e-6 * (std::abs(L1) + std::abs(L2));
  fr.lamCa_alt = grouped_lamCa(sym);
  fr.lamCa = near_degenerate ? fr.lamCa_alt : fr.I1 + fr.I2 / sym.l2_m_l1;
  fr.Ca = fr.lamCa / sym.lambda;

  fr.Aa = Ba * Ba * Ba * (L1 + L2) - A2 * Ba * Ba - A2 * L1 * L2;
  fr.Aa_form2 = Ba * sym.ba2_m_a2 * (L1 + L2) - A2 * sym.ba_m_l1 * sym.ba_m_l2;

  fr.D1 = 2.0 * beta * sym.ba2_m_l1sq * sym.ba2_m_l2sq * A2 * A *
          (-sym.ba_m_a * sym.ba_m_a) / sym.ba2_m_a2; // 2ABa-(Ba^2+A^2) = -(Ba-A)^2
  fr.D2 = 4.0 * beta * A2 * Ba * (L1 * L2 * (Ba * Ba + L1 * L2) - A * Ba * Ba * (L1 + L2));
  fr.D3 = -beta * Ba2pA2 *
          (Ba2pA2 * L1 * L2 * (L1 + L2) - A * Ba * Ba * (L1 * L1 + L1 * L2 + L2 * L2 + A2) +
           A * L1 * L2 * (L1 * L2 - A2));
  fr.D = 2.0 * Ba * sym.ba2_m_l1sq * sym.ba2_m_l2sq * fr.lamCa;

  fr.E = beta / sym.l2_m_l1 *
         (L1 / sym.ba2_m_l1sq * brace1 - L2 / sym.ba2_m_l2sq * brace2);

  {
    const double ab = std::abs(beta), aBa = std::abs(Ba), aL1 = std::abs(L1),
                 aL2 = std::abs(L2), aB2A2 = std::abs(Ba2pA2);
    const double d2s = 4.0 * ab * A2 * aBa *
                       (aL1 * aL2 * (aBa * aBa + aL1 * aL2) + A * aBa * aBa * (aL1 + aL2));
    const double d3s = ab * aB2A2 *
                       (aB2A2 * aL1 * aL2 * (aL1 + aL2) +
                        A * aBa * aBa * (aL1 * aL1 + aL1 * aL2 + aL2 * aL2 + A2) +
                        A * aL1 * aL2 * (aL1 * aL2 + A2));
    fr.D_scale = std::max({std::abs(fr.D1), d2s, d3s, std::abs(fr.D)});
    const double brace_scale1 =
        2.0 * A2 * aL1 + aB2A2 * (aL1 * aL1 + A2) / (2.0 * aBa);
    const double brace_scale2 =
        2.0 * A2 * aL2 + aB2A2 * (aL2 * aL2 + A2) / (2.0 * aBa);
    const double i2_scale =
        ab * aL1 * std::abs(sym.l2_m_a) / std::abs(sym.ba2_m_l1sq) * brace_scale1 +
        ab * aL2 * std::abs(sym.l1_m_a) / std::abs(sym.ba2_m_l2sq) * brace_scale2;
    fr.lamCa_scale = std::max({std::abs(fr.I1), i2_scale / std::abs(sym.l2_m_l1),
                               std::abs(fr.lamCa), std::abs(fr.lamCa_alt)});
  }

  // script-B and the E-coefficient family, transcribed verbatim.
  const cplx BpL1 = Ba + L1, BpL2 = Ba + L2, BpA = Ba + A;
  const cplx t2num = (L2 * Ba * Ba - A2 * Ba) * sym.l1_m_a +
                     (A * L1 * L2 + A * Ba * L1) * (-sym.ba_m_a);
  fr.scrB = 2.0 * A2 / (BpA * BpA) + 2.0 * t2num / (BpL1 * BpL2 * sym.ba2_m_a2) +
            (A * Ba + L1 * L2) / (BpL1 * BpL2);

  const cplx eh_core =
      fr.E / fr.lamCa *
          (2.0 * A * Ba / (BpA * BpA) - 2.0 * t2num / (sym.ba2_m_a2 * BpL1 * BpL2) -
           (A * Ba + L1 * L2) / (BpL1 * BpL2)) -
      2.0 * (Ba * Ba * (L1 + L2) - A2 * Ba + L1 * L2 * Ba) / (sym.ba2_m_a2 * BpL1 * BpL2) +
      Ba / (BpL1 * BpL2);
  const cplx nn_core = fr.scrB / fr.lamCa * A2 + 2.0 * Ba * Ba / (beta * sym.ba2_m_a2);
  for (int k = 0; k < nt; ++k) {
    fr.Eh[k] = fr.ixi[k] * eh_core;
    fr.EHNN[k] = fr.ixi[k] * nn_core;
    for (int j = 0; j < nt; ++j) {
      fr.EHjN[j][k] = -Ba2pA2 * fr.ixi[k] * fr.ixi[j] * fr.scrB / (Ba * fr.lamCa) -
                      4.0 * fr.ixi[j] * fr.ixi[k] * Ba / (beta * sym.ba2_m_a2) +
                      (j == k ? 2.0 * Ba / beta : cplx(0.0));
      for (int l = 0; l < nt; ++l) {
        fr.EHjl[j][k][l] =
            fr.ixi[j] * fr.ixi[k] * fr.ixi[l] * (fr.scrB / fr.lamCa + 2.0 / (beta * sym.ba2_m_a2)) -
            (k == l ? 2.0 / beta * fr.ixi[j] : cplx(0.0)) -
            (j == k ? 2.0 / beta * fr.ixi[l] : cplx(0.0));
      }
    }
  }
  return fr;
}

LopatinskiFrame lopatinski_frame(const SpectralPoint& point, const SectorParams& params) {
  return lopatinski_frame(eval_frame(point, params), point.xi);
}

IdentityReport lopatinski_identities(const LopatinskiFrame& fr, double tol) {
  IdentityReport rep;
  auto add = [&rep](std::string name, double res) {
    rep.checks.push_back({std::move(name), res});
  };
  {
    const double s = std::max(std::abs(fr.Aa), std::abs(fr.Aa_form2)) + 1e-300;
    add("Aa-two-forms", std::abs(fr.Aa - fr.Aa_form2) / s);
  }
  add("D-sum-vs-product",
      std::abs(fr.D - (fr.D1 + fr.D2 + fr.D3)) / (fr.D_scale + 1e-300));
  add("Ca-I-vs-grouped",
      std::abs(fr.lamCa - fr.lamCa_alt) / (fr.lamCa_scale + 1e-300));
  {
    const cplx den = 2.0 * fr.sym.lambda * fr.sym.Ba * fr.sym.ba2_m_l1sq * fr.sym.ba2_m_l2sq;
    const cplx ca_q = (fr.D1 + fr.D2 + fr.D3) / den;
    const double s = fr.D_scale / std::abs(den) + std::abs(fr.Ca) + 1e-300;
    add("Ca-D-quotient", std::abs(ca_q - fr.Ca) / s);
  }
  rep.max_residual = 0.0;
  for (const auto& c : rep.checks) {
    if (c.residual >= rep.max_residual) {
      rep.max_residual = c.residual;
      rep.worst = c.name;
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

cplx ca_zero_limit(double A, const SectorParams& params) {
  if (!(A > 0.0)) throw std::domain_error("ca_zero_limit: A must be > 0");
  const double a = params.a;
  const double Ba0 = std::sqrt(a + A * A);
  return cplx(-a * a / (2.0 * params.beta * A * (Ba0 - A)), 0.0);
}

CaLimitReport ca_limit_consistency(double A, const SectorParams& params,
                                   const std::vector<cplx>& lambda_seq) {
  CaLimitReport rep;
  const cplx limit = ca_zero_limit(A, params);
  std::vector<double> xi_axis(params.N - 1, 0.0);
  xi_axis[0] = A;
  for (cplx lam : lambda_seq) {
    const auto fr = lopatinski_frame(eval_frame(lam, A, params), xi_axis);
    rep.deviations.push_back(std::abs(fr.lamCa - limit));
  }
  const size_t n = rep.deviations.size();
  const size_t tail = std::max<size_t>(1, n / 4);
  rep.tail_max = 0.0;
  for (size_t i = n - tail; i < n; ++i) rep.tail_max = std::max(rep.tail_max, rep.deviations[i]);
  rep.decreasing = n < 2 || rep.deviations.back() <= rep.deviations.front();
  return rep;
}

BoundScanReport scan_lower_bounds(const ScanGrid& grid, const SectorParams& params,
                                  double margin) {
  params.validate();
  BoundScanReport rep;
  const char* names[6] = {
      "P2 / ((|l|^0.5+|xi|)^2 (|l|^0.5+1+|xi|)^2)",
      "|lambda C_a|",
      "|lambda^{3/2} C_a| (low-A)",
      "|A_a| / (|lambda|+1)^2",
      "|D| / (|lambda|(|lambda|+1)^2 A) (high-A)",
      "|D| / |lambda|^{1/2} (low-A)"};
  rep.entries.resize(6);
  for (int i = 0; i < 6; ++i) {
    rep.entries[i].name = names[i];
    rep.entries[i].infimum = std::numeric_limits<double>::infinity();
  }

  auto update = [](BoundEntry& e, double v, const GridPoint& gp) {
    ++e.samples;
    if (v < e.infimum) {
      e.infimum = v;
      e.argmin_lambda = gp.lambda;
      e.argmin_A = gp.A;
    }
  };

  std::vector<double> xi_axis(params.N - 1, 0.0);
  for (const GridPoint& gp : grid.points) {
    const double absl = std::abs(gp.lambda);
    const double sq = std::sqrt(absl);
    xi_axis[0] = gp.A;
    const SymbolFrame f = eval_frame(gp.lambda, gp.A, params);
    const LopatinskiFrame fr = lopatinski_frame(f, xi_axis);

    const double den_p2 = (sq + gp.A) * (sq + gp.A) * (sq + 1 + gp.A) * (sq + 1 + gp.A);
    update(rep.entries[0], std::abs(p2(gp.A, gp.lambda, params)) / den_p2, gp);
    update(rep.entries[1], std::abs(fr.lamCa), gp);
    if (gp.region == Region::LowA)
      update(rep.entries[2], sq * std::abs(fr.lamCa), gp); // |l^{3/2} C_a| = |l|^{1/2} |l C_a|
    update(rep.entries[3], std::abs(fr.Aa) / ((absl + 1) * (absl + 1)), gp);
    if (gp.region == Region::HighA)
      update(rep.entries[4], std::abs(fr.D) / (absl * (absl + 1) * (absl + 1) * gp.A), gp);
    if (gp.region == Region::LowA)
      update(rep.entries[5], std::abs(fr.D) / sq, gp);
  }

  // Asymptotic-ratio diagnostics at the spec probe points.
  {
    const cplx lam = std::polar(params.c0 * 0.5, 0.3);
    const double Ahigh = std::sqrt(100.0 * (params.c0 + params.a) / grid.r_small);
    xi_axis[0] = Ahigh;
    const SymbolFrame f = eval_frame(lam, Ahigh, params);
    const LopatinskiFrame fr = lopatinski_frame(f, xi_axis);
    const cplx ref = -params.beta * f.z1 * f.z2 * (lam + params.a) * Ahigh;
    rep.high_A_ratio = fr.D / ref;
    rep.high_A_ratio_displayed = fr.D / (2.0 * ref);
    const double Alow = std::sqrt(1e-4 * std::abs(lam) / grid.R_large);
    xi_axis[0] = Alow;
    const SymbolFrame fl = eval_frame(lam, Alow, params);
    const LopatinskiFrame frl = lopatinski_frame(fl, xi_axis);
    const cplx sz1 = std::sqrt(fl.z1), sz2 = std::sqrt(fl.z2);
    const cplx s = lam + params.a;
    rep.low_A_ratio = frl.D / (-params.beta * s * s * sz1 * sz2 * (sz1 + sz2));
  }

  rep.pass = true;
  for (auto& e : rep.entries) {
    e.pass = e.samples > 0 && e.infimum >= margin;
    if (e.samples > 0 && !e.pass) rep.pass = false;
  }
  return rep;
}

} // namespace qths
