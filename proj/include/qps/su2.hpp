#pragma once

#include <vector>

#include "qps/grid.hpp"
#include "qps/operators.hpp"
#include "qps/types.hpp"

namespace qps::su2 {

// U(phi, theta, Phi) = exp(i phi Jz) exp(-i theta Jy) exp(i Phi Jz).
// The middle sign is fixed by the discrete-lattice embedding identity; see
// tests for the equivalent exp(xi J+ - xi* J-) form.
Operator euler_rotation(double j, double phi, double theta, double Phi);

// Irreducible tensor (multipole) operator T^j_{lm}, orthonormal under
// Tr[T^dag T].
Operator multipole(double j, int l, int m);

// C^{jj}_{jj,l0}, the coefficient whose powers generate the s-family.
double parity_coefficient(double j, int l);

// Diagonal kernel generator at the north pole. s=0 is the parity appearing
// in the Wigner kernel; s=-1 projects onto |j,j>; s=+1 is its dual.
Operator parity(double j, double s);

// Kernel at a sphere point: Pi^{(s)}(theta, phi) = U Pi^{(s)} U^dag with
// U = euler_rotation(j, phi, theta, 0).
Operator kernel(double j, double s, double theta, double phi);

// Spin coherent state |theta, phi> = U |j,j>.
Vec coherent_state(double j, double theta, double phi);

// Phase-space value Tr[A Pi^{(s)}(theta,phi)] (real for hermitian A).
cd evaluate(const Operator& a, double j, double s, double theta, double phi);
std::vector<double> evaluate_grid(const Operator& a, double j, double s, const SphereGrid& g);

// Husimi value <theta,phi| rho |theta,phi>.
double q_function(const Operator& rho, double j, double theta, double phi);

// Weyl (rotation characteristic) function Tr[rho U(phi,theta,Phi)].
cd weyl(const Operator& rho, double j, double phi, double theta, double Phi);

// Band-limited expansion sum_{l<=lmax, |m|<=l} c_{lm} Y_lm(theta, phi).
struct HarmonicExpansion {
  int lmax = 0;
  std::vector<cd> coeffs;  // index l*l + l + m

  cd& at(int l, int m) { return coeffs[(size_t)(l * l + l + m)]; }
  const cd& at(int l, int m) const { return coeffs[(size_t)(l * l + l + m)]; }
  cd eval(double theta, double phi) const;
};

// Expansion of the Glauber-Sudarshan P function solving
// rho = integral P(Omega) |Omega><Omega| dOmega (diagonal in the multipole
// basis, exact for band-limited P).
HarmonicExpansion p_reconstruct(const Operator& rho, double j);

// Expansion of the s-function of rho (p_reconstruct is the s=+1 dual path).
HarmonicExpansion harmonic_expansion(const Operator& rho, double j, double s);

// Operator recovered from a phase-space harmonic expansion sampled at s.
Operator operator_from_expansion(const HarmonicExpansion& e, double j, double s);

int dim_of(double j);

}  // namespace qps::su2
