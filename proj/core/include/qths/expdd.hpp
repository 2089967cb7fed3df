#pragma once

#include <vector>

#include "qths/sector.hpp"

namespace qths {

/// phi(w) = (e^w - 1)/w, series for small |w|.
cplx phi1(cplx w);

/// M(g1, g2, x) = (e^{-g1 x} - e^{-g2 x})/(g1 - g2), the first divided
/// difference of g -> e^{-g x}. Confluent-safe: for |g1-g2| x < 1e-3 it
/// switches to -x e^{-g2 x} phi((g2-g1) x).
cplx kernel_M(cplx g1, cplx g2, double x);

/// Second divided difference of g -> e^{-g x} at three nodes.
cplx exp_dd2(cplx g1, cplx g2, cplx g3, double x);

/// psi_k(z) = int_0^1 u^k e^{z u} du; series for moderate |z|, upward
/// recurrence otherwise. k <= 12.
cplx psi_moment(int k, cplx z);

/// int_0^h t^k e^{-g t} dt = h^{k+1} psi_k(-g h).
cplx exp_cell_moment(int k, cplx g, double h);

/// One term c * x^p e^{-gamma x} of an exponential amplitude profile.
struct ExpTerm {
  int p = 0;
  cplx gamma{0.0, 0.0};
  cplx c{0.0, 0.0};
};

/// Finite sum of ExpTerm; the analytic normal-direction representation used
/// throughout the half-space solver.
struct ExpProfile {
  std::vector<ExpTerm> terms;

  cplx eval(double x) const;
  ExpProfile derivative() const;
  ExpProfile scaled(cplx s) const;
  ExpProfile& operator+=(const ExpProfile& o);
  /// Merge terms with equal (p, gamma) and drop negligible ones.
  void compress(double drop_tol = 0.0);
};

ExpProfile operator*(cplx s, const ExpProfile& p);
ExpProfile operator+(ExpProfile a, const ExpProfile& b);

} // namespace qths
