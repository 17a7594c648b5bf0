#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qps/grid.hpp"
#include "qps/types.hpp"

namespace qps {

enum class Family { HW, SU2, Wootters, SUN, Composite };

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

// Which phase-space construction a kernel belongs to, plus the ordering
// parameter s in [-1, 1] (s = 0 Wigner, s = -1 Husimi Q side, s = +1 P side).
struct KernelSpec {
  Family family = Family::SU2;
  double s = 0.0;
  double j = 0.5;                     // SU2
  int n = 2;                          // SUN
  int cutoff = 40;                    // HW Fock cutoff
  std::vector<KernelSpec> factors;    // Composite

  void validate() const;
  int dim() const;
};

// Discretized frame: evaluation points with weights carrying the family
// measure, and the kernel at each point. HW uses a square alpha-grid
// (weights dRe dIm / pi), finite families use exact grids.
class KernelFrame {
 public:
  virtual ~KernelFrame() = default;
  virtual int dim() const = 0;
  virtual std::size_t size() const = 0;
  virtual double weight(std::size_t node) const = 0;
  virtual Operator kernel(std::size_t node, double s) const = 0;
  // (theta, phi) on sphere frames, (Re alpha, Im alpha) on the HW grid,
  // (z, x) on the lattice.
  virtual std::array<double, 2> coords(std::size_t node) const = 0;
  virtual std::string describe(std::size_t node) const = 0;
};

// exact_degree: polynomial exactness for SU2 grids (defaults to 4j, enough
// for pairwise tracials). hw_extent is the disk radius of the alpha-grid and
// hw_points the lattice points per axis before masking; the defaults keep
// every node inside the truncation trust region of a cutoff-40 space while
// resolving Fock levels up to ~8.
struct FrameOptions {
  int exact_degree = -1;
  double hw_extent = 4.5;
  int hw_points = 61;
};

std::unique_ptr<KernelFrame> make_frame(const KernelSpec& spec, const FrameOptions& opts = {});

std::vector<double> evaluate_frame(const KernelFrame& frame, const Operator& a, double s);

// A = sum_i w_i F_i Pi^{(-s)}(Omega_i).
Operator reconstruct(const KernelFrame& frame, const std::vector<double>& values, double s);

struct AxiomCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct AxiomReport {
  KernelSpec spec;
  std::uint64_t seed = 0;
  bool monte_carlo = false;
  bool cutoff_caveat = false;  // HW truncation caveat
  std::vector<AxiomCheck> checks;
  double wall_seconds = 0.0;
  bool all_pass() const;
};

struct VerifyOptions {
  bool monte_carlo = false;     // SUN: MC sampling instead of moment calculus
  int mc_samples = 100000;
  int trials = 4;               // random operator pairs per check
  FrameOptions frame;
  bool bare_generator_diagnostic = false;  // replace the kernel by sigma_z
};

// Numerical check of the five correspondence axioms (linearity/invertibility,
// reality, normalization to the identity, pairwise trace rule, covariance).
AxiomReport verify_stratonovich_weyl(const KernelSpec& spec, std::uint64_t seed,
                                     const VerifyOptions& opts = {});

// Samples of a phase-space function at s1 re-expressed at s2 by
// reconstructing the operator and re-evaluating (finite families and the
// HW alpha-grid frame).
std::vector<double> generalized_fourier(const KernelFrame& frame,
                                        const std::vector<double>& values, double s1,
                                        double s2);

// Double-quadrature convolution: the phase-space function at s of the
// operator product A B, from F_A sampled at s1 and F_B sampled at s2, through
// the three-kernel coupling Tr[Pi^{(s)} Pi^{(-s1)} Pi^{(-s2)}].
std::vector<double> kernel_convolution(const KernelFrame& frame,
                                       const std::vector<double>& f_a,
                                       const std::vector<double>& f_b, double s1, double s2,
                                       double s);

}  // namespace qps
