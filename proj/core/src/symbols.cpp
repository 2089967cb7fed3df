#include "qths/symbols.hpp"

#include <cmath>

namespace qths {

namespace {

// Larger-magnitude root of z^2 - S z + P by the sign-aware quadratic formula;
// the other root comes from the product.
std::array<cplx, 2> stable_quadratic_roots(cplx S, cplx P) {
  const cplx disc = std::sqrt(S * S - 4.0 * P);
  const cplx q = (std::real(std::conj(S) * disc) >= 0.0) ? 0.5 * (S + disc)
                                                         : 0.5 * (S - disc);
  if (q == cplx(0.0, 0.0)) return {cplx(0.0), cplx(0.0)};
  return {q, P / q};
}

} // namespace

SymbolFrame eval_frame(cplx lambda, double A, const SectorParams& params) {
  if (!in_sector(lambda, params)) throw std::domain_error("eval_frame: lambda outside sector");
  if (!(A >= 0.0)) throw std::domain_error("eval_frame: A must be >= 0");

  SymbolFrame f;
  f.params = params;
  f.lambda = lambda;
  f.A = A;

  const double k = 1.0 + params.beta * params.beta / 2.0;
  const cplx S = 2.0 * lambda / k + params.a;
  const cplx P = lambda * (lambda + params.a) / k;
  auto roots = stable_quadratic_roots(S, P);
  const cplx target = lambda / k;
  if (std::abs(roots[0] - target) <= std::abs(roots[1] - target)) {
    f.z1 = roots[0];
    f.z2 = roots[1];
  } else {
    f.z1 = roots[1];
    f.z2 = roots[0];
  }

  const double A2 = A * A;
  f.Ba = std::sqrt(lambda + params.a + A2);
  f.L1 = std::sqrt(f.z1 + A2);
  f.L2 = std::sqrt(f.z2 + A2);

  f.ba2_m_l1sq = lambda + params.a - f.z1;
  f.ba2_m_l2sq = lambda + params.a - f.z2;
  f.ba2_m_a2 = lambda + params.a;
  f.l1_m_a = f.z1 / (f.L1 + A);
  f.l2_m_a = f.z2 / (f.L2 + A);
  f.ba_m_a = (lambda + params.a) / (f.Ba + A);
  f.l2_m_l1 = (f.z2 - f.z1) / (f.L2 + f.L1);
  f.ba_m_l1 = f.ba2_m_l1sq / (f.Ba + f.L1);
  f.ba_m_l2 = f.ba2_m_l2sq / (f.Ba + f.L2);
  return f;
}

SymbolFrame eval_frame(const SpectralPoint& point, const SectorParams& params) {
  return eval_frame(point.lambda, point.tangential_norm(), params);
}

cplx p2(double xi_norm, cplx lambda, const SectorParams& params) {
  const double x2 = xi_norm * xi_norm;
  const double b2h = params.beta * params.beta / 2.0;
  return (lambda + x2) * (lambda + x2 + params.a) + b2h * (x2 * x2 + params.a * x2);
}

std::array<cplx, 2> lambda_pm(double xi_norm, const SectorParams& params) {
  const double x2 = xi_norm * xi_norm;
  const double a = params.a;
  const double b2h = params.beta * params.beta / 2.0;
  const cplx disc = std::sqrt(cplx(a * a / 4.0 - a * b2h * x2 - b2h * x2 * x2, 0.0));
  const cplx base(-(x2 + a / 2.0), 0.0);
  return {base + disc, base - disc};
}

namespace {

double scaled_residual(cplx lhs, cplx rhs, double scale) {
  return std::abs(lhs - rhs) / std::max(scale, 1e-300);
}

} // namespace

IdentityReport check_frame_identities(const SymbolFrame& f, double tol) {
  IdentityReport rep;
  const SectorParams& p = f.params;
  const double k = 1.0 + p.beta * p.beta / 2.0;
  const double A2 = f.A * f.A;

  auto add = [&rep](std::string name, double res) {
    rep.checks.push_back({std::move(name), res});
  };

  {
    const cplx lhs = f.z1 + f.z2;
    const cplx rhs = 2.0 * f.lambda / k + p.a;
    add("z-sum", scaled_residual(lhs, rhs, std::abs(f.z1) + std::abs(f.z2) + std::abs(rhs)));
  }
  {
    const cplx lhs = f.z1 * f.z2;
    const cplx rhs = f.lambda * (f.lambda + p.a) / k;
    add("z-product", scaled_residual(lhs, rhs, std::abs(lhs) + std::abs(rhs)));
  }
  {
    const cplx lhs = f.L1 * f.L1;
    const cplx rhs = f.z1 + A2;
    add("L1^2", scaled_residual(lhs, rhs, std::abs(lhs) + std::abs(f.z1) + A2));
  }
  {
    const cplx lhs = f.L2 * f.L2;
    const cplx rhs = f.z2 + A2;
    add("L2^2", scaled_residual(lhs, rhs, std::abs(lhs) + std::abs(f.z2) + A2));
  }
  {
    const cplx lhs = p2(f.A, f.lambda, p);
    const cplx rhs = k * (A2 + f.z1) * (A2 + f.z2);
    const double scale = k * (A2 + std::abs(f.z1)) * (A2 + std::abs(f.z2)) +
                         std::abs(f.lambda + A2) * std::abs(f.lambda + A2 + p.a);
    add("P2-factorization", scaled_residual(lhs, rhs, scale));
  }
  add("ReBa-positive", f.Ba.real() > 0.0 ? 0.0 : 1.0);
  add("ReL1-positive", f.L1.real() > 0.0 || (f.A == 0.0 && std::abs(f.z1) == 0.0) ? 0.0 : 1.0);
  add("ReL2-positive", f.L2.real() > 0.0 ? 0.0 : 1.0);

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

} // namespace qths
