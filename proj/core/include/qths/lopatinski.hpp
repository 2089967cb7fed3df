#pragma once

#include <array>
#include <vector>

#include "qths/symbols.hpp"

namespace qths {

/// Boundary symbols at one (lambda, xi') point. Tangential indices run over
/// 0..N-2; fixed-size arrays cover N <= 3.
///
/// lamCa is evaluated from the I-form by default; when L1 and L2 come closer
/// than 1e-6 * (|L1|+|L2|) the grouped alternative form (no explicit L2-L1
/// denominator) is used instead.
struct LopatinskiFrame {
  SymbolFrame sym;
  std::array<cplx, 2> ixi{}; // i*xi_j for tangential components

  cplx I1, I2;
  cplx lamCa;      // lambda * C_a
  cplx lamCa_alt;  // grouped alternative form
  cplx Ca;
  cplx Aa;         // form 1: Ba^3(L1+L2) - A^2 Ba^2 - A^2 L1 L2
  cplx Aa_form2;   // Ba(Ba^2-A^2)(L1+L2) - A^2(Ba-L1)(Ba-L2)
  cplx D1, D2, D3;
  cplx D;          // 2 Ba (Ba^2-L1^2)(Ba^2-L2^2)(I1 + I2/(L2-L1))
  cplx E;          // difference form
  cplx scrB;

  std::array<cplx, 2> Eh{};
  std::array<cplx, 2> EHNN{};
  std::array<std::array<cplx, 2>, 2> EHjN{};
  std::array<std::array<std::array<cplx, 2>, 2>, 2> EHjl{};

  // Magnitude of the largest summand entering each composite quantity;
  // used to normalize identity residuals (backward-error reading).
  double D_scale = 0.0;
  double lamCa_scale = 0.0;
};

/// Residuals of the frame's asserted identities (A_a two forms, D sum vs
/// product, C_a three-way consistency), normalized by computation scale.
IdentityReport lopatinski_identities(const LopatinskiFrame& frame, double tol = 1e-8);

/// Build the frame from tangential frequencies (A > 0 required).
LopatinskiFrame lopatinski_frame(const SymbolFrame& sym, const std::vector<double>& xi);
LopatinskiFrame lopatinski_frame(const SpectralPoint& point, const SectorParams& params);

/// Limit of lambda*C_a as lambda -> 0:  -a^2 / (2 beta A (sqrt(a+A^2) - A)).
cplx ca_zero_limit(double A, const SectorParams& params);

/// Max deviation |lambda C_a - ca_zero_limit| over the tail of a lambda
/// sequence (the last quarter); also reports whether the deviation decreases.
struct CaLimitReport {
  std::vector<double> deviations;
  double tail_max = 0.0;
  bool decreasing = false;
};
CaLimitReport ca_limit_consistency(double A, const SectorParams& params,
                                   const std::vector<cplx>& lambda_seq);

struct BoundEntry {
  std::string name;
  double infimum = 0.0;
  cplx argmin_lambda{0.0, 0.0};
  double argmin_A = 0.0;
  long samples = 0;
  bool pass = false;
};

struct BoundScanReport {
  std::vector<BoundEntry> entries;
  // Diagnostic asymptotic ratios (not pass/fail gated here):
  cplx high_A_ratio{0.0, 0.0};       // D / (-beta z1 z2 (lambda+a) A) at the probe point
  cplx high_A_ratio_displayed{0.0};  // D / (-2 beta z1 z2 (lambda+a) A)
  cplx low_A_ratio{0.0, 0.0};        // D / (-beta (lambda+a)^2 sqrt(z1 z2)(sqrt z1 + sqrt z2))
  bool pass = false;
};

/// Measured infima of the six normalized boundary-symbol quantities over the
/// grid. pass = every infimum >= margin (default 1e-8).
BoundScanReport scan_lower_bounds(const ScanGrid& grid, const SectorParams& params,
                                  double margin = 1e-8);

} // namespace qths
