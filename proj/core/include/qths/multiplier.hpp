#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qths/lopatinski.hpp"

namespace qths {

enum class MFamily { M, Mtilde, Mprime };

/// One anisotropic symbol class: family, order s, and the derivative-decay
/// kind (1: decay in |lambda|^{1/2}+|xi'|; 2: decay in |xi'|).
/// lambda_power adds a |lambda|^p factor to the weight, used for the
/// inverse-symbol bounds whose right-hand sides carry |lambda| powers.
struct ClassSpec {
  MFamily family = MFamily::M;
  double s = 0.0;
  int kind = 1;
  bool capped = true; // restrict to |lambda| <= c0 (vs the full open sector)
  double lambda_power = 0.0;
};

std::string to_string(const ClassSpec& spec);

/// The class weight w(alpha_order; lambda, A).
double class_weight(const ClassSpec& spec, cplx lambda, double A, int alpha_order);

using SymbolFn = std::function<cplx(cplx lambda, const std::vector<double>& xi)>;

/// Central-difference estimate of (tau d_tau)^ell D^alpha_{xi'} m at a point.
/// Steps resolve the local anisotropic scale; one automatic shrink on domain
/// exit, then a std::domain_error.
cplx d_alpha(const SymbolFn& m, const SpectralPoint& point, const std::vector<int>& alpha,
             int ell, const SectorParams& params);

struct MembershipEntry {
  int ell = 0;
  std::vector<int> alpha;
  double sup_coarse = 0.0;
  double sup_fine = 0.0;
  bool stable = false; // sup_fine <= 2 * sup_coarse (+ noise floor)
};

struct MembershipReport {
  std::string symbol_id;
  ClassSpec spec;
  std::vector<MembershipEntry> entries;
  bool pass = false;
};

struct ClassRegion {
  bool low_A_only = false; // restrict to A^2 <= |lambda|/R
  double R = 16.0;
};

/// Measure sups of |(tau d_tau)^ell D^alpha m| / w over the grid and a 2x
/// refined grid; pass iff every entry is finite and refinement-stable.
MembershipReport estimate_class(const std::string& symbol_id, const SymbolFn& m,
                                const ClassSpec& spec, const SectorParams& params,
                                const ScanGrid& grid, int max_order,
                                const ClassRegion& region = {});

struct CatalogClaim {
  std::string id;
  SymbolFn symbol;
  ClassSpec spec;
  ClassRegion region;
};

/// The complete list of membership claims collected from the symbol lemmas.
std::vector<CatalogClaim> catalog(const SectorParams& params);

struct EhDecomposition {
  std::vector<IdentityCheck> checks;
  double max_residual = 0.0;
  bool pass = false;
};

/// Reconstructs the displayed boundary-coefficient decompositions from their
/// named sub-terms and verifies they reproduce Eh / EHNN / EHjN / EHjl.
EhDecomposition decompose_eh(const LopatinskiFrame& frame, double tol = 1e-8);

} // namespace qths
