#pragma once

#include <complex>
#include <vector>

#include "qps/types.hpp"

namespace qps {

// log(n!) for integer or half-integer-doubled arguments; n must be >= 0.
double log_factorial(int n);

// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m> in the Condon-Shortley
// convention, evaluated with the Racah closed form on log-factorials.
// Angular momenta and projections are passed doubled (tj = 2j) so that
// half-integer spins stay exact.
double clebsch_gordan_2(int tj1, int tm1, int tj2, int tm2, int tj, int tm);

// Convenience wrapper for (half-)integer double arguments; values must be
// exact multiples of 1/2.
double clebsch_gordan(double j1, double m1, double j2, double m2, double j, double m);

// Fully normalized associated Legendre function: spherical_harmonic without
// the e^{i m phi} factor, for m >= 0 and x = cos(theta).
double scaled_plm(int l, int m, double x);

// Spherical harmonic Y_lm(theta, phi), Condon-Shortley phase, e^{i m phi}.
cd spherical_harmonic(int l, int m, double theta, double phi);

// Gauss-Legendre nodes and weights on [-1, 1], exact for degree 2n-1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace qps
