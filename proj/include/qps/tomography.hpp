#pragma once

#include <cstdint>
#include <vector>

#include "qps/su2.hpp"
#include "qps/types.hpp"

namespace qps::tomography {

struct ProjectionRecord {
  double phi = 0.0;
  double theta = 0.0;
  double Phi = 0.0;
  std::vector<double> probabilities;  // m = j, j-1, ..., -j
  long shots = 0;                     // 0 = exact probabilities
};

// W(theta, phi) = sum_m p_m [parity]_mm, the phase-space value assembled from
// spin-projection probabilities along the rotated axis.
double wigner_from_projections(const ProjectionRecord& rec,
                               const std::vector<double>& parity_diag);

// Projection probabilities p_m = diag(U^dag rho U); shots > 0 replaces them
// with multinomial frequencies drawn deterministically from the seed.
ProjectionRecord simulate_projections(const Operator& rho, double j, double phi, double theta,
                                      double Phi = 0.0, long shots = 0, std::uint64_t seed = 0);

struct GridSample {
  double theta = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

// The (4j+2)^2 sampling net theta_a = a pi / (4j+2) (a = 1..4j+2),
// phi_b = 2 pi b / (4j+2) (b = 0..4j+1).
std::vector<GridSample> standard_net(double j);

// Samples of the s-function of rho on the standard net.
std::vector<GridSample> sample_standard_net(const Operator& rho, double j, double s);

struct ReconstructionReport {
  su2::HarmonicExpansion coeffs;
  Operator rho;
  double condition_number = 0.0;
  double fit_residual = 0.0;            // max |fit - sample|
  double hermiticity_residual = 0.0;    // before symmetrization
  double trace_renormalization = 0.0;   // |trace - 1| before renormalization
};

// Least-squares fit of the band-limited harmonic coefficients (l <= 2j) to
// phase-space samples at ordering parameter s, followed by inversion to the
// density operator. Normal equations carry a 1e-12 diagonal regularizer; the
// condition number of the design matrix is reported.
ReconstructionReport reconstruct_from_grid(double j, const std::vector<GridSample>& samples,
                                           double s);

}  // namespace qps::tomography
