#pragma once

#include <vector>

#include "qps/foundation.hpp"
#include "qps/grid.hpp"
#include "qps/types.hpp"

namespace qps::composite {

struct EulerPoint {
  double theta = 0.0;
  double phi = 0.0;
  double Phi = 0.0;
};

struct CVPoint {
  cd alpha;
};

struct LatticePoint {
  int z = 0;
  int x = 0;
};

// Tagged per-factor coordinate; the active member follows the factor family
// (SU2 -> euler, HW -> cv, Wootters -> lattice).
struct FactorPoint {
  enum class Kind { Euler, CV, Lattice };
  Kind kind = Kind::Euler;
  EulerPoint euler;
  CVPoint cv;
  LatticePoint lattice;

  static FactorPoint at(double theta, double phi, double Phi = 0.0);
  static FactorPoint at(cd alpha);
  static FactorPoint at(int z, int x);
};

using CompositePoint = std::vector<FactorPoint>;

// Kronecker product of the factor kernels, each at its own point and its own
// ordering parameter (carried by the spec).
Operator tensor_kernel(const std::vector<KernelSpec>& specs, const CompositePoint& point);

double evaluate(const Operator& rho, const std::vector<KernelSpec>& specs,
                const CompositePoint& point);

// SU(2)^n rotations conjugating the SU(2^n) generalized parity: a kernel over
// 2n angles instead of the 2(2^n - 1) needed by the full SU(2^n) route.
// points supply per-qubit (theta_i, phi_i); Phi_i is ignored by the kernel.
Operator hybrid_multiqubit_kernel(int n, const std::vector<EulerPoint>& points, double s = 0.0);

int hybrid_angle_count(int n);    // 2n
int sun_route_angle_count(int n); // 2(2^n - 1)

// Slice over at most two free variables (u, v). Each factor binds theta and
// phi either to a free variable (index 0 or 1) or to a fixed value.
struct AngleBinding {
  int theta_var = -1;
  double theta_fix = 0.0;
  int phi_var = -1;
  double phi_fix = 0.0;
};

struct SliceSpec {
  enum class Kind { EqualAngle, Equatorial, AxisPair, Custom };
  Kind kind = Kind::EqualAngle;
  std::vector<AngleBinding> bindings;  // used by Custom; derived otherwise

  // theta_i = u, phi_i = v for every factor.
  static SliceSpec equal_angle();
  // theta_i = pi/2, phi_i = u.
  static SliceSpec equatorial();
  // theta_1 = u, theta_rest = v, all phi fixed at 0.
  static SliceSpec axis_pair();
  static SliceSpec custom(std::vector<AngleBinding> bindings);
};

struct SliceSample {
  double u = 0.0;
  double v = 0.0;
  double value = 0.0;
};

// Evaluates the composite function on the outer product of the variable
// grids (v_grid is ignored when no binding references variable 1). All
// factors must be SU2.
std::vector<SliceSample> slice_evaluate(const Operator& rho, const std::vector<KernelSpec>& specs,
                                        const SliceSpec& slice, const std::vector<double>& u_grid,
                                        const std::vector<double>& v_grid = {0.0});

int count_sign_changes(const std::vector<SliceSample>& samples);

struct MarginalResult {
  std::vector<double> values;    // quadrature over the discarded factors
  std::vector<double> from_partial_trace;
  double max_difference = 0.0;
};

// Marginal of the composite function over all factors but `keep`, sampled on
// `grid`; cross-checked against the kernel trace of the partial-traced state.
MarginalResult marginal_wigner(const Operator& rho, const std::vector<KernelSpec>& specs,
                               std::size_t keep, const SphereGrid& grid);

// W(alpha, theta, phi) = Tr[rho (Pi_cv(alpha) (x) Pi_qubit(theta, phi))] for
// rho on Fock(cutoff) (x) qubit.
double hybrid_cv_dv_point(const Operator& rho, int cutoff, cd alpha, double theta, double phi,
                          double s = 0.0);

struct HybridSample {
  cd alpha;
  double theta = 0.0;
  double phi = 0.0;
  double value = 0.0;
  double alpha_envelope = 0.0;  // max |value| over the sphere grid at this alpha
};

std::vector<HybridSample> hybrid_cv_dv_grid(const Operator& rho, int cutoff,
                                            const std::vector<cd>& alphas, const SphereGrid& grid,
                                            double s = 0.0);

}  // namespace qps::composite
