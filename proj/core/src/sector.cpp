#include "qths/sector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qths/symbols.hpp"

namespace qths {

void SectorParams::validate() const {
  if (N != 2 && N != 3) throw std::invalid_argument("N must be 2 or 3");
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  if (beta == 0.0) throw std::invalid_argument("beta must be nonzero");
  const double eps0 = epsilon0_of(beta);
  if (!(epsilon > eps0 && epsilon < M_PI / 2.0)) {
    std::ostringstream os;
    os << "epsilon must lie in (" << eps0 << ", pi/2); got " << epsilon;
    throw std::invalid_argument(os.str());
  }
  if (!(c0 > 0.0)) throw std::invalid_argument("c0 must be positive");
}

double epsilon0_of(double beta) {
  if (beta == 0.0) throw std::invalid_argument("epsilon0_of: beta must be nonzero");
  return std::atan(std::abs(beta) / std::sqrt(2.0));
}

bool in_open_sector(cplx lambda, double epsilon) {
  if (lambda == cplx(0.0, 0.0)) return false;
  return std::abs(std::arg(lambda)) < M_PI - epsilon;
}

bool in_sector(cplx lambda, const SectorParams& params) {
  return in_open_sector(lambda, params.epsilon) && std::abs(lambda) <= params.c0;
}

double SpectralPoint::tangential_norm() const {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return std::sqrt(s);
}

std::string to_string(Region r) {
  switch (r) {
    case Region::LowA: return "low-A";
    case Region::HighA: return "high-A";
    default: return "middle";
  }
}

Region classify_region(cplx lambda, double A, const SectorParams& params,
                       double r_small, double R_large) {
  const double A2 = A * A;
  if (A2 <= std::abs(lambda) / R_large) return Region::LowA;
  if (A2 >= (params.c0 + params.a) / r_small) return Region::HighA;
  return Region::Middle;
}

ScanGrid build_scan_grid(const SectorParams& params, const ScanGridControls& c) {
  params.validate();
  if (c.lambda_radial < 2 || c.lambda_angular < 2 || c.xi_count < 2)
    throw std::invalid_argument("grid resolutions must be >= 2 per axis");

  ScanGrid grid;
  grid.r_small = c.r_small;
  grid.R_large = c.R_large;

  const double rmin = params.c0 * c.lambda_min_factor;
  const double rmax = params.c0;
  for (int i = 0; i < c.lambda_radial; ++i) {
    const double t = (c.lambda_radial == 1) ? 0.0
                     : static_cast<double>(i) / (c.lambda_radial - 1);
    const double r = rmin * std::pow(rmax / rmin, t);
    for (int j = 0; j < c.lambda_angular; ++j) {
      // stay strictly inside the aperture
      const double span = (M_PI - params.epsilon) * 0.999;
      const double th = -span + 2.0 * span * j / (c.lambda_angular - 1);
      grid.lambda_samples.push_back(std::polar(r, th));
    }
  }

  const double xiscale = std::max(1.0, std::sqrt(params.a));
  for (int i = 0; i < c.xi_count; ++i) {
    const double t = static_cast<double>(i) / (c.xi_count - 1);
    grid.xi_samples.push_back(xiscale * c.xi_min *
                              std::pow(c.xi_max / c.xi_min, t));
  }

  grid.points.reserve(grid.lambda_samples.size() * grid.xi_samples.size());
  for (cplx lam : grid.lambda_samples)
    for (double A : grid.xi_samples)
      grid.points.push_back({lam, A, classify_region(lam, A, params, c.r_small, c.R_large)});
  return grid;
}

namespace {

struct BandCheck {
  const char* name;
  double margin; // smallest slack factor, > 1 means pass
};

// Factor-of-two bands around the exact lambda->0 limits of the Lemma
// quantities. Returns the worst slack factor over the four lower and two
// upper bands (value/bound for lower bounds, bound/value for upper).
BandCheck zl_band_margin(const SymbolFrame& f) {
  const double k = 1.0 + f.params.beta * f.params.beta / 2.0;
  const double absl = std::abs(f.lambda);
  const double a = f.params.a;
  const double ce = std::sin(f.params.epsilon / 2.0);

  BandCheck worst{"", 1e300};
  auto upd = [&](const char* name, double slack) {
    if (slack < worst.margin) { worst.margin = slack; worst.name = name; }
  };

  const double r1 = std::abs(f.z1) / absl;            // -> 1/k
  upd("z1-lower", r1 / (0.5 / k));
  upd("z1-upper", (2.0 / k) / r1);
  const double r2 = std::abs(f.z2) / (absl + 1.0);    // -> a at lambda -> 0
  upd("z2-lower", r2 / (0.5 * a / (1.0 + absl)));
  upd("z2-upper", (2.0 * a) / r2);

  const double fl1 = f.L1.real() / std::sqrt(absl + f.A * f.A);
  upd("ReL1-lower", fl1 / (0.5 * ce / std::sqrt(k)));
  const double cl2 = 0.5 * ce * std::sqrt(std::min(a, 1.0) / k);
  const double fl2 = f.L2.real() / std::sqrt(absl + 1.0 + f.A * f.A);
  upd("ReL2-lower", fl2 / cl2);

  const double u1 = std::abs(f.L1) / std::sqrt(absl + f.A * f.A);
  upd("L1-upper", 2.0 / u1);
  const double u2 = std::abs(f.L2) / std::sqrt(absl + 1.0 + f.A * f.A);
  upd("L2-upper", 2.0 * std::sqrt(std::max(a, 1.0)) / u2);
  return worst;
}

} // namespace

CalibrationResult calibrate_c0(const SectorParams& params_without_c0,
                               const ScanGrid& probe_grid) {
  if (probe_grid.points.empty())
    throw std::invalid_argument("calibrate_c0: probe grid is empty");
  SectorParams p = params_without_c0;
  const double floor = p.a * std::pow(2.0, -40);

  CalibrationResult last_fail{};
  for (double cand = p.a; cand >= floor; cand *= 0.5) {
    p.c0 = cand;
    CalibrationResult res;
    res.c0 = cand;
    res.worst_margin = 1e300;
    bool ok = true;
    for (const GridPoint& gp : probe_grid.points) {
      if (std::abs(gp.lambda) > cand) continue;
      if (!in_open_sector(gp.lambda, p.epsilon)) continue;
      const SymbolFrame f = eval_frame(gp.lambda, gp.A, p);
      const BandCheck b = zl_band_margin(f);
      if (b.margin < res.worst_margin) {
        res.worst_margin = b.margin;
        res.worst_lambda = gp.lambda;
        res.worst_A = gp.A;
        res.worst_quantity = b.name;
      }
      if (b.margin < 1.0) { ok = false; }
    }
    if (ok && res.worst_margin < 1e300) return res;
    if (res.worst_margin < 1e300) last_fail = res;
  }
  std::ostringstream os;
  os << "calibrate_c0: no dyadic candidate passed; worst offender at lambda=("
     << last_fail.worst_lambda.real() << "," << last_fail.worst_lambda.imag()
     << "), A=" << last_fail.worst_A << ", quantity=" << last_fail.worst_quantity;
  throw std::runtime_error(os.str());
}

SectorParams with_calibrated_c0(SectorParams params, const ScanGridControls& controls) {
  SectorParams probe = params;
  probe.c0 = probe.a; // provisional cap for grid construction
  probe.validate();
  const ScanGrid grid = build_scan_grid(probe, controls);
  params.c0 = calibrate_c0(params, grid).c0;
  params.validate();
  return params;
}

} // namespace qths
