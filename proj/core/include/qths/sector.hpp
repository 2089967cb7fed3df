#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qths {

using cplx = std::complex<double>;

/// Physical and analytic constants of one problem instance.
///
/// The admissible resolvent set is the sector
///   { lambda != 0 : |arg lambda| < pi - epsilon, |lambda| <= c0 },
/// where epsilon must exceed epsilon0 = atan(|beta|/sqrt(2)).
struct SectorParams {
  int N = 2;            // spatial dimension (2 or 3)
  double a = 1.0;       // relaxation rate, > 0
  double beta = 0.5;    // velocity/order-parameter coupling, != 0
  double epsilon = 0.0; // sector aperture angle, in (epsilon0, pi/2)
  double c0 = 0.0;      // resolvent magnitude cap, > 0

  void validate() const;
};

/// atan(|beta|/sqrt(2)); the minimal admissible sector angle.
double epsilon0_of(double beta);

/// Membership test for the sector with magnitude cap.
bool in_sector(cplx lambda, const SectorParams& params);

/// Membership in the uncapped sector |arg lambda| < pi - epsilon.
bool in_open_sector(cplx lambda, double epsilon);

/// One (lambda, xi') sample. xi has N-1 components.
struct SpectralPoint {
  cplx lambda;
  std::vector<double> xi;

  double tangential_norm() const;
};

enum class Region : std::uint8_t { LowA, Middle, HighA };

std::string to_string(Region r);

struct GridPoint {
  cplx lambda;
  double A = 0.0; // |xi'|
  Region region = Region::Middle;
};

/// Controls for the (lambda, |xi'|) product grid used by scans and probes.
struct ScanGridControls {
  int lambda_radial = 12;  // log-spaced moduli per decade set
  int lambda_angular = 9;  // angles across (-(pi-eps), pi-eps)
  int xi_count = 25;       // log-spaced |xi'| samples
  double lambda_min_factor = 1.0 / (1 << 20); // smallest |lambda| = factor * c0
  double xi_min = 1e-4;
  double xi_max = 1e4;
  double r_small = 1.0 / 16.0; // high-A regime threshold: A^2 >= (c0+a)/r
  double R_large = 16.0;       // low-A regime threshold: A^2 <= |lambda|/R
};

struct ScanGrid {
  std::vector<cplx> lambda_samples;
  std::vector<double> xi_samples; // |xi'| magnitudes
  std::vector<GridPoint> points;  // full product with region tags
  double r_small = 1.0 / 16.0;
  double R_large = 16.0;
};

Region classify_region(cplx lambda, double A, const SectorParams& params,
                       double r_small, double R_large);

ScanGrid build_scan_grid(const SectorParams& params, const ScanGridControls& controls);

struct CalibrationResult {
  double c0 = 0.0;
  double worst_margin = 0.0;       // smallest factor-of-two slack over the grid
  cplx worst_lambda{0.0, 0.0};
  double worst_A = 0.0;
  std::string worst_quantity;
};

/// Dyadic search for the largest magnitude cap c0 in {a, a/2, a/4, ...} such
/// that all near-origin symbol bands hold with factor-2 slack at every probe
/// point with |lambda| <= c0. Deterministic for a fixed probe grid; adding
/// probe points can only shrink the result.
///
/// Throws std::runtime_error (carrying the worst offending point) when no
/// candidate down to a * 2^-40 passes.
CalibrationResult calibrate_c0(const SectorParams& params_without_c0,
                               const ScanGrid& probe_grid);

/// Convenience: build a probe grid with cap `a`, calibrate, and return params
/// with c0 filled in.
SectorParams with_calibrated_c0(SectorParams params, const ScanGridControls& controls);

} // namespace qths
