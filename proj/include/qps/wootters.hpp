#pragma once

#include <array>
#include <vector>

#include "qps/types.hpp"

namespace qps::wootters {

// Lattice points are indexed (z, x) with z, x in {0, 1}; rows of the 2x2
// Wigner table are z, columns are x.

// Phase-point operator A^{(s)}(z,x) =
// (1/2)(I + 3^{s/2}[(-1)^z sz + (-1)^x sx + (-1)^{z+x} sy]).
Operator phase_point_operator(int z, int x, double s = 0.0);

// Discrete displacement D(z,x) = e^{i pi x z / 2} sx^x sz^z.
Operator displacement(int z, int x);

// Measured-lattice probabilities (p++, p+-, p-+, p--) in the +/- eigenbasis
// pairing of (sz+sx+sy)-type sums; equal to the s=0 Wigner values at
// (z,x) = (0,0), (0,1), (1,0), (1,1).
std::array<double, 4> feynman_probabilities(const Operator& rho);

// Discrete Wigner table W(z,x) = Tr[rho A^{(s)}(z,x)].
std::array<double, 4> wigner(const Operator& rho, double s = 0.0);

// Discrete Weyl (characteristic) table X(zt, xt) = Tr[rho D(zt, xt)].
std::array<cd, 4> discrete_weyl(const Operator& rho);

// rho = (1/2) sum X(zt,xt) D(zt,xt)^dag.
Operator weyl_inverse(const std::array<cd, 4>& x_table);

// Symplectic discrete Fourier transform between the Wigner and Weyl tables:
// W(z,x) = (1/2) sum_{zt,xt} X(zt,xt) e^{i pi (xt z - zt x)} ... specialized
// below to the d=2 phase conventions; see tests for the round-trip contract.
std::array<double, 4> dft_weyl_to_wigner(const std::array<cd, 4>& x_table);
std::array<cd, 4> dft_wigner_to_weyl(const std::array<double, 4>& w_table);

// Angles (theta, phi) of the spin-1/2 kernel point carrying A^{(s)}(z,x),
// canonicalized to theta in [0, pi], phi in [0, 2 pi).
std::array<double, 2> stratonovich_embedding(int z, int x);

}  // namespace qps::wootters
