#include "qps/wootters.hpp"

#include <cmath>

#include "qps/operators.hpp"

namespace qps::wootters {

namespace {

void check_point(int z, int x) {
  require(z == 0 || z == 1, "wootters.point", "z must be 0 or 1");
  require(x == 0 || x == 1, "wootters.point", "x must be 0 or 1");
}

void check_qubit(const Operator& rho) {
  require(rho.rows() == 2 && rho.cols() == 2, "wootters.dim",
          "discrete phase space is implemented for d = 2 only");
}

double sgn(int bit) { return bit == 0 ? 1.0 : -1.0; }

}  // namespace

Operator phase_point_operator(int z, int x, double s) {
  check_point(z, x);
  require(s >= -1.0 - 1e-12 && s <= 1.0 + 1e-12, "kernel.s", "s must lie in [-1, 1]");
  double c = std::pow(3.0, 0.5 * s);
  return 0.5 * (Operator::Identity(2, 2) + c * sgn(z) * pauli_z() + c * sgn(x) * pauli_x() +
                c * sgn(z ^ x) * pauli_y());
}

Operator displacement(int z, int x) {
  check_point(z, x);
  Operator d = Operator::Identity(2, 2);
  if (x) d = pauli_x() * d;
  if (z) d = d * pauli_z();
  return std::exp(cd(0.0, pi * x * z / 2.0)) * d;
}

std::array<double, 4> feynman_probabilities(const Operator& rho) {
  check_qubit(rho);
  double ex = (rho * pauli_x()).trace().real();
  double ey = (rho * pauli_y()).trace().real();
  double ez = (rho * pauli_z()).trace().real();
  return {0.5 * (1.0 + ex + ey + ez), 0.5 * (1.0 - ex - ey + ez),
          0.5 * (1.0 + ex - ey - ez), 0.5 * (1.0 - ex + ey - ez)};
}

std::array<double, 4> wigner(const Operator& rho, double s) {
  check_qubit(rho);
  std::array<double, 4> w{};
  for (int z = 0; z < 2; ++z)
    for (int x = 0; x < 2; ++x)
      w[(size_t)(2 * z + x)] = (rho * phase_point_operator(z, x, s)).trace().real();
  return w;
}

std::array<cd, 4> discrete_weyl(const Operator& rho) {
  check_qubit(rho);
  std::array<cd, 4> x_table{};
  for (int zt = 0; zt < 2; ++zt)
    for (int xt = 0; xt < 2; ++xt)
      x_table[(size_t)(2 * zt + xt)] = (rho * displacement(zt, xt)).trace();
  return x_table;
}

Operator weyl_inverse(const std::array<cd, 4>& x_table) {
  Operator rho = Operator::Zero(2, 2);
  for (int zt = 0; zt < 2; ++zt)
    for (int xt = 0; xt < 2; ++xt)
      rho += 0.5 * x_table[(size_t)(2 * zt + xt)] * displacement(zt, xt).adjoint();
  return rho;
}

// The lattice transform pairing the (z,x) labels used here (z on sz, x on sx)
// is the parity kernel (-1)^{zt z + xt x}; both directions carry the 1/2.
std::array<double, 4> dft_weyl_to_wigner(const std::array<cd, 4>& x_table) {
  std::array<double, 4> w{};
  for (int z = 0; z < 2; ++z)
    for (int x = 0; x < 2; ++x) {
      cd acc = 0.0;
      for (int zt = 0; zt < 2; ++zt)
        for (int xt = 0; xt < 2; ++xt)
          acc += x_table[(size_t)(2 * zt + xt)] * sgn((zt * z + xt * x) % 2);
      w[(size_t)(2 * z + x)] = 0.5 * acc.real();
    }
  return w;
}

std::array<cd, 4> dft_wigner_to_weyl(const std::array<double, 4>& w_table) {
  std::array<cd, 4> x_table{};
  for (int zt = 0; zt < 2; ++zt)
    for (int xt = 0; xt < 2; ++xt) {
      double acc = 0.0;
      for (int z = 0; z < 2; ++z)
        for (int x = 0; x < 2; ++x)
          acc += w_table[(size_t)(2 * z + x)] * sgn((zt * z + xt * x) % 2);
      x_table[(size_t)(2 * zt + xt)] = 0.5 * acc;
    }
  return x_table;
}

std::array<double, 2> stratonovich_embedding(int z, int x) {
  check_point(z, x);
  double theta = std::acos(1.0 / std::sqrt(3.0)) + z * pi;
  double phi = -0.25 * pi + (2 * x - z) * 0.5 * pi;
  if (theta > pi) {
    theta = 2.0 * pi - theta;
    phi += pi;
  }
  phi = std::fmod(phi, 2.0 * pi);
  if (phi < 0) phi += 2.0 * pi;
  return {theta, phi};
}

}  // namespace qps::wootters
