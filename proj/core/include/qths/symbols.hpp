#pragma once

#include <array>
#include <string>
#include <vector>

#include "qths/sector.hpp"

namespace qths {

/// All pointwise scalar symbols at one (lambda, |xi'|) sample, together with
/// the stabilized differences that downstream formulas divide by.
///
/// z1, z2 are the roots of  z^2 - (2 lambda/(1+beta^2/2) + a) z
///                          + lambda(lambda+a)/(1+beta^2/2) = 0,
/// labeled so that z1 is the root closest to lambda/(1+beta^2/2); all square
/// roots take the principal branch.
struct SymbolFrame {
  SectorParams params;
  cplx lambda;
  double A = 0.0; // |xi'|

  cplx z1, z2;
  cplx Ba;      // sqrt(lambda + a + A^2)
  cplx L1, L2;  // sqrt(z_j + A^2)

  // Stable difference forms (no subtractive cancellation):
  cplx ba2_m_l1sq; // Ba^2 - L1^2 = lambda + a - z1
  cplx ba2_m_l2sq; // Ba^2 - L2^2 = lambda + a - z2
  cplx ba2_m_a2;   // Ba^2 - A^2  = lambda + a
  cplx l1_m_a;     // L1 - A = z1/(L1+A)
  cplx l2_m_a;     // L2 - A = z2/(L2+A)
  cplx ba_m_a;     // Ba - A = (lambda+a)/(Ba+A)
  cplx l2_m_l1;    // L2 - L1 = (z2-z1)/(L2+L1)
  cplx ba_m_l1;    // Ba - L1 = (lambda+a-z1)/(Ba+L1)
  cplx ba_m_l2;    // Ba - L2 = (lambda+a-z2)/(Ba+L2)
};

/// Evaluate the frame. Requires lambda in the sector; A = 0 is allowed (then
/// L_j = sqrt(z_j)). Throws std::domain_error on sector violation.
SymbolFrame eval_frame(cplx lambda, double A, const SectorParams& params);
SymbolFrame eval_frame(const SpectralPoint& point, const SectorParams& params);

/// Characteristic polynomial of the velocity block,
/// P2 = (lambda+|xi|^2)(lambda+|xi|^2+a) + (beta^2/2)(|xi|^4 + a|xi|^2).
cplx p2(double xi_norm, cplx lambda, const SectorParams& params);

/// The two roots of P2(|xi|, .):
/// -(|xi|^2+a/2) +- sqrt(a^2/4 - a beta^2/2 |xi|^2 - beta^2/2 |xi|^4).
std::array<cplx, 2> lambda_pm(double xi_norm, const SectorParams& params);

struct IdentityCheck {
  std::string name;
  double residual = 0.0; // |lhs-rhs| / computation scale
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  double max_residual = 0.0;
  std::string worst;
  bool pass = false; // all residuals <= tol
};

/// Residuals of the frame's algebraic identities, each normalized by the
/// magnitude scale of the summands entering it. Pass threshold 1e-10.
IdentityReport check_frame_identities(const SymbolFrame& frame, double tol = 1e-10);

} // namespace qths
