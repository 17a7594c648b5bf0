#pragma once

#include <vector>

#include "qps/types.hpp"

namespace qps::hw {

inline constexpr int default_cutoff = 40;

// Truncated Fock space with levels 0..n_max (dimension n_max+1).
Operator lowering(int n_max);
Operator raising(int n_max);
Operator number(int n_max);

Vec fock_state(int n_max, int n);
// D(alpha)|0>, normalized on the truncated space.
Vec coherent_state(int n_max, cd alpha);

// D_s(xi) = exp(xi a^dag - xi* a) e^{s |xi|^2 / 2}: the untruncated matrix
// elements in their closed associated-Laguerre form, projected to the cutoff
// space (exact entrywise for every xi; norm leaks once |xi|^2 nears n_max,
// which triggers a warning).
Operator displacement(int n_max, cd xi, double s = 0.0);

// Kernel generator at the origin: diagonal 2(-1)^n at s = 0; for s in (-1, 1)
// the diagonal is (2/(1-s)) ((s+1)/(s-1))^n; s = -1 gives |0><0| and s = +1
// is rejected (no bounded kernel).
Operator parity(int n_max, double s = 0.0);

// Kernel at a phase-space point: Pi^{(s)}(alpha) = D(alpha) parity D^dag.
// The s = 0 kernel is assembled from D(2 alpha) directly, which keeps its
// entries exact at every alpha.
Operator kernel(int n_max, cd alpha, double s = 0.0);

// Phase-space point alpha = (q + i p) / sqrt(2); measure d^2alpha/pi.
double wigner(const Operator& rho, cd alpha);
double husimi_q(const Operator& rho, cd alpha);
double value_s(const Operator& rho, cd alpha, double s);

// chi^{(s)}(xi) = Tr[rho D(xi)] e^{s |xi|^2 / 2}.
cd characteristic(const Operator& rho, cd xi, double s = 0.0);
// Normal-ordered characteristic function (the P function is accessed only
// through this transform; it has no pointwise evaluation).
cd glauber_p_char(const Operator& rho, cd xi);

struct WeylEstimate {
  cd value;
  double std_error = 0.0;  // 0 in exact mode
  long shots = 0;
};

// Ancilla-interferometry protocol measuring Tr[rho D(alpha)]: a |+> probe
// couples through exp(-(1/2) sz (x) (alpha a^dag - alpha* a)) and
// <sx> + i <sy> of the probe returns the Weyl function. shots = 0 gives the
// exact branch; shots > 0 simulates binomial counts with the given seed.
WeylEstimate ancilla_weyl_protocol(const Operator& rho, cd alpha, long shots = 0,
                                   std::uint64_t seed = 0);

// Trapezoid marginal of samples W(q_i, p_k) on a uniform rectangular grid.
// axis = 0 integrates out p (returns a q-profile), axis = 1 integrates out q.
// Values are normalized with the d^2alpha/pi = dq dp / (2 pi) convention.
std::vector<double> marginal(const std::vector<std::vector<double>>& w, double dq, double dp,
                             int axis);

}  // namespace qps::hw
