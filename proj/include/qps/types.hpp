#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qps {

using cd = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846264338327950288;

inline constexpr double tol_algebraic = 1e-9;
inline constexpr double tol_fock = 1e-6;

inline constexpr const char* library_version = "0.1.0";

// Error with a short machine-readable code, surfaced verbatim by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

// Soft warnings: collected for the caller (CLI surfaces them in the run
// manifest); each code is reported at most once per drain to avoid spam from
// per-node loops.
void warn(const std::string& code, const std::string& what);
std::vector<std::string> drain_warnings();

inline void require(bool ok, const std::string& code, const std::string& what) {
  if (!ok) fail(code, what);
}

inline double hermiticity_defect(const Operator& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Operator& a, double tol = 1e-12) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

// Density-operator validation: hermitian to 1e-12, unit trace to 1e-10,
// eigenvalues >= -1e-10.
inline void validate_density(const Operator& rho) {
  require(rho.rows() == rho.cols(), "state.shape", "density matrix must be square");
  require(is_hermitian(rho), "state.hermiticity",
          "density matrix is not hermitian within 1e-12");
  require(std::abs(rho.trace().real() - 1.0) <= 1e-10 && std::abs(rho.trace().imag()) <= 1e-10,
          "state.trace", "density matrix trace differs from 1 by more than 1e-10");
  Eigen::SelfAdjointEigenSolver<Operator> es(rho, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-10, "state.positivity",
          "density matrix has an eigenvalue below -1e-10");
}

inline Operator projector(const Vec& v) { return v * v.adjoint(); }

// Seeded random hermitian matrix with unit-scale entries.
inline Operator random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Operator m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = cd(g(rng), g(rng));
  return 0.5 * (m + Operator(m.adjoint()));
}

// Seeded random density matrix (Ginibre construction).
inline Operator random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Operator m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = cd(g(rng), g(rng));
  Operator rho = m * m.adjoint();
  return rho / rho.trace();
}

inline Vec random_state_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(dim);
  for (int r = 0; r < dim; ++r) v(r) = cd(g(rng), g(rng));
  return v / v.norm();
}

}  // namespace qps
