#include "qps/operators.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qps {

namespace {

int spin_dim(double j) {
  double d = 2.0 * j + 1.0;
  int dim = (int)std::lround(d);
  require(std::abs(d - dim) < 1e-9 && dim >= 1, "spin.j", "j must be a non-negative half-integer");
  return dim;
}

}  // namespace

Operator spin_jz(double j) {
  int dim = spin_dim(j);
  Operator m = Operator::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) m(k, k) = j - k;
  return m;
}

Operator spin_jplus(double j) {
  int dim = spin_dim(j);
  Operator m = Operator::Zero(dim, dim);
  // row k holds m-value j-k; J+ |j,m> = sqrt(j(j+1)-m(m+1)) |j,m+1>
  for (int k = 1; k < dim; ++k) {
    double mm = j - k;
    m(k - 1, k) = std::sqrt(j * (j + 1.0) - mm * (mm + 1.0));
  }
  return m;
}

Operator spin_jminus(double j) { return spin_jplus(j).adjoint(); }

Operator spin_jx(double j) { return 0.5 * (spin_jplus(j) + spin_jminus(j)); }

Operator spin_jy(double j) { return cd(0.0, -0.5) * (spin_jplus(j) - spin_jminus(j)); }

Operator pauli_x() {
  Operator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Operator pauli_y() {
  Operator m(2, 2);
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}

Operator pauli_z() {
  Operator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Operator expm(const Operator& a) { return a.exp(); }

Operator kron(const Operator& a, const Operator& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Operator partial_trace(const Operator& rho, int dim_a, int dim_b, int traced_factor) {
  require(rho.rows() == (Eigen::Index)dim_a * dim_b && rho.cols() == rho.rows(),
          "operator.shape", "partial trace dimensions do not match the operator");
  require(traced_factor == 0 || traced_factor == 1, "operator.factor",
          "traced factor must be 0 or 1");
  if (traced_factor == 1) {
    Operator out = Operator::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int k = 0; k < dim_a; ++k)
        for (int b = 0; b < dim_b; ++b) out(i, k) += rho(i * dim_b + b, k * dim_b + b);
    return out;
  }
  Operator out = Operator::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int k = 0; k < dim_b; ++k)
      for (int a = 0; a < dim_a; ++a) out(i, k) += rho(a * dim_b + i, a * dim_b + k);
  return out;
}

double trace_norm(const Operator& a) {
  Eigen::JacobiSVD<Operator> svd(a);
  return svd.singularValues().sum();
}

}  // namespace qps
