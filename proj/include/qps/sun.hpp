#pragma once

#include <vector>

#include "qps/types.hpp"

namespace qps::sun {

// Generalized Gell-Mann generators, Tr[g_a g_b] = 2 delta_ab, ordered so the
// k-block (k = 2..N) contributes sym(j,k), antisym(j,k) pairs for j < k
// followed by the diagonal generator at 1-based position k^2 - 1.
std::vector<Operator> generators(int n);

// Number of Euler angles: N(N-1) rotation angles + (N-1) diagonal phases.
int angle_count(int n);

// Euler-factorized special unitary: the rotation ladder
// prod_{a=N..2} prod_{b=2..a} exp(i lam3 phi_idx) exp(i y_{1b} theta_idx)
// followed by the diagonal phases prod_{c=1..N-1} exp(i lam_{(c+1)^2-1} Phi_c),
// with y_{1b} = i(|b><1| - |1><b|). Angles are packed
// [phi_1..phi_{N(N-1)/2}, theta_1.., Phi_1..Phi_{N-1}].
Operator euler_rotation(int n, const std::vector<double>& angles);

// Coherent state: the rotated lowest-weight (last) basis vector.
Vec coherent_state(int n, const std::vector<double>& angles);

// Kernel from a normalized state vector:
// Pi^{(s)}[v] = I/N + (N+1)^{(1+s)/2} (|v><v| - I/N).
Operator kernel_from_vector(double s, const Vec& v);

Operator kernel(int n, double s, const std::vector<double>& angles);

// Kernel at zero angles (diagonal).
Operator parity(int n, double s);

// Pointwise s-transform: F^{(s1)} = tr/N + (N+1)^{(s1-s2)/2} (F^{(s2)} - tr/N)
// where tr is the trace of the underlying operator.
double s_transform(int n, double s1, double s2, double value, double trace = 1.0);

// Generator Weyl components chi_k = Tr[rho g_k];
// rho = Tr[rho] I/N + (1/2) sum chi_k g_k.
std::vector<double> generator_weyl(const Operator& rho);
Operator generator_weyl_inverse(int n, double trace, const std::vector<double>& chi);

double phase_space_value(const Operator& a, double s, const Vec& v);

}  // namespace qps::sun
