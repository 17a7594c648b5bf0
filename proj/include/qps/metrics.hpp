#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qps/foundation.hpp"
#include "qps/types.hpp"

namespace qps::metrics {

double purity(const Operator& rho);

// Purity from s = 0 samples on a frame: sum_i w_i W_i^2.
double purity_from_samples(const KernelFrame& frame, const std::vector<double>& w);

struct SampledFunction {
  double s = 0.0;
  std::vector<double> values;
};

// Dual-pair overlap integral: int F1^{(s)} F2^{(-s)} dOmega = Tr[rho1 rho2].
// Rejects samples whose ordering parameters are not an (s, -s) pair.
double fidelity_ps(const KernelFrame& frame, const SampledFunction& f1,
                   const SampledFunction& f2);

// Normalized Pauli-string components F(k) = Tr[rho P_k] / sqrt(2^n), with
// P_k the tensor of {I, X, Y, Z} read from the base-4 digits of k (most
// significant digit = first qubit). sum_k F(k)^2 = Tr[rho^2].
std::vector<double> pauli_vector(const Operator& rho);

// sum_k f2(k) f1_dual(k); f1_dual must be unit-normalized (pure reference).
double fidelity_discrete(const std::vector<double>& f2, const std::vector<double>& f1_dual);

struct EstimationRun {
  std::string target;
  long samples = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  // range of |F_target(k)| over the drawn indices (stabilizer targets
  // concentrate on a single magnitude).
  double min_sampled_weight = 0.0;
  double max_sampled_weight = 0.0;
};

// Direct fidelity estimation: draw Pauli indices k with Pr(k) = F_target(k)^2
// and average X = F_actual(k) / F_target(k). The sample stream is
// counter-based, so a fixed seed reproduces the estimate independent of
// threading or batching.
EstimationRun dfe_sample(const Operator& target_pure, const Operator& actual, long samples,
                         std::uint64_t seed, const std::string& target_name = "");

// (1/2) ||a - b||_1 from the eigenvalues of the difference.
double trace_distance(const Operator& a, const Operator& b);

// Qubit closed form sqrt((1/2) int W_diff^2 dOmega); rejects dim != 2.
double trace_distance_qubit_ps(const Operator& a, const Operator& b);

// Negative volume (1/2)(int |W| dOmega - 1) of the spin-j Wigner function,
// integrated adaptively to absolute tolerance tol (the |.| kink defeats
// fixed-degree quadrature).
double negativity_volume(const Operator& rho, double j, double tol = 1e-7);

// Four-point lattice version.
double negativity_volume_discrete(const Operator& rho);

// Wehrl entropy -int Q ln Q dOmega of the spin-j Q function, 0 ln 0 := 0.
double wehrl_entropy(const Operator& rho, double j, double tol = 1e-9);

enum class SpinAxis { X, Y, Z };

// <J_i> recovered from the first angular moment of the s = 0 function:
// (2j+1) sqrt(j(j+1))/(4 pi) int f_i W sin(theta) dtheta dphi with
// f = (sin(theta) cos(phi), -sin(theta) sin(phi), cos(theta)).
double expectation_from_moments(const Operator& rho, double j, SpinAxis which);

}  // namespace qps::metrics
