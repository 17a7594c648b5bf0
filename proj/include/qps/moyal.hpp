#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qps/types.hpp"

namespace qps::moyal {

// Uniform rectangular (q, p) grid with periodic spectral boundary. Node i
// along q sits at q_min + i dq with dq = (q_max - q_min) / nq; the point
// q_max itself is the periodic image of q_min.
struct PhaseGrid {
  int nq = 0;
  int np = 0;
  double q_min = 0.0;
  double q_max = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  double hbar = 1.0;

  double dq() const { return (q_max - q_min) / nq; }
  double dp() const { return (p_max - p_min) / np; }
  double q(int i) const { return q_min + i * dq(); }
  double p(int k) const { return p_min + k * dp(); }
  bool matches(const PhaseGrid& o) const;
  void validate() const;
};

// Monomial coeff * q^qpow * p^ppow of an exact polynomial representation.
struct Monomial {
  int qpow = 0;
  int ppow = 0;
  cd coeff;
};

// Function sampled on a PhaseGrid; when `poly` is present the samples were
// synthesized from that polynomial and star products use the analytic
// derivative path for this factor.
struct GridFunction {
  PhaseGrid grid;
  Eigen::MatrixXcd values;  // nq x np, row index = q node
  std::optional<std::vector<Monomial>> poly;

  static GridFunction from_poly(const PhaseGrid& grid, std::vector<Monomial> poly);
  static GridFunction from_samples(const PhaseGrid& grid, Eigen::MatrixXcd values);
  static GridFunction constant(const PhaseGrid& grid, cd value);

  bool is_real(double tol = 1e-10) const;
  double max_abs() const;
  // Largest |value| on the outermost node ring, relative to max_abs().
  double boundary_decay() const;
};

// Gaussian Wigner function of a coherent state centred at (q0, p0):
// (2 ... ) exp(-((q-q0)^2 + (p-p0)^2)/hbar), normalized to mass 1 under
// dq dp / (2 pi hbar).
GridFunction coherent_wigner(const PhaseGrid& grid, double q0, double p0);

// Named polynomial Hamiltonians: harmonic = (q^2+p^2)/2, linear = q,
// quartic = p^2/2 + q^4/4.
GridFunction named_hamiltonian(const PhaseGrid& grid, const std::string& name);

// Moyal star product f * g. Dispatch:
//   poly (x) poly   -> exact algebraic Bopp product (result carries poly);
//   poly (x) grid   -> terminating Bopp series, analytic derivatives on the
//                      polynomial factor, spectral derivatives on the other;
//   grid (x) grid   -> twisted-mode DFT of the convolution-integral form
//                      (O(N^2) per output mode; small grids only).
// aliasing_tol bounds the relative spectral-tail energy of any factor that
// gets differentiated or transformed spectrally.
GridFunction star_product(const GridFunction& f, const GridFunction& g,
                          double aliasing_tol = 1e-8);

// (f*g - g*f) / (i hbar); real for real inputs.
GridFunction moyal_bracket(const GridFunction& f, const GridFunction& g,
                           double aliasing_tol = 1e-8);

// Mass integral of W under dq dp / (2 pi hbar).
double mass(const GridFunction& w);
// Integral of W^2 under the same measure (Tr[rho^2] for a Wigner function).
double purity_integral(const GridFunction& w);

struct EvolveReport {
  GridFunction result;
  double dt = 0.0;
  int steps = 0;
  double dt_limit = 0.0;        // RK4 advection bound 2.8 / (k_max |v|_max)
  double mass_initial = 0.0;
  double mass_final = 0.0;
  double mass_drift = 0.0;      // max |mass(t) - mass(0)| over checkpoints
  double purity_initial = 0.0;
  double purity_final = 0.0;
};

// RK4 integration of dW/dt = {{H, W}} for polynomial H. The bracket series
// terminates at the polynomial degree, so the evolution is spectrally exact
// in space and O(dt^4) in time.
EvolveReport evolve(const GridFunction& w0, const GridFunction& h, double dt, int steps);

// CSV rows q,p,value (value as re,im when any sample is complex).
void write_csv(const GridFunction& f, const std::string& path);

// Binary snapshot: magic "QPSGRID1", int32 nq, np, float64 q_min, q_max,
// p_min, p_max, hbar, then nq*np float64 real samples, row-major in q,
// little-endian throughout.
void write_snapshot(const GridFunction& f, const std::string& path);
GridFunction read_snapshot(const std::string& path);

}  // namespace qps::moyal
