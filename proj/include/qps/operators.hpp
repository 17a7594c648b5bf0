#pragma once

#include "qps/types.hpp"

namespace qps {

// Angular momentum matrices in the |j,j> ... |j,-j> (descending m) basis.
Operator spin_jz(double j);
Operator spin_jplus(double j);
Operator spin_jminus(double j);
Operator spin_jx(double j);
Operator spin_jy(double j);

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

// Scaling-and-squaring matrix exponential (Eigen MatrixFunctions).
Operator expm(const Operator& a);

Operator kron(const Operator& a, const Operator& b);

// Partial trace over one factor of a bipartite dim_a x dim_b system.
Operator partial_trace(const Operator& rho, int dim_a, int dim_b, int traced_factor);

// Trace norm ||a||_1 (sum of singular values).
double trace_norm(const Operator& a);

}  // namespace qps
