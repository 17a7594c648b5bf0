#pragma once

#include <string>

#include "qps/types.hpp"

namespace qps::states {

// Builders return density operators. Qubit basis order is |0> = spin up.
Operator fock(int n_max, int n);
Operator coherent(int n_max, cd alpha);
Operator spin_up(double j);
Operator spin_down(double j);
Operator spin_coherent(double j, double theta, double phi);
Operator ghz(int n_qubits);
Operator w_state(int n_qubits);
Operator bell(int which);  // 0 Phi+, 1 Phi-, 2 Psi+, 3 Psi-
Operator dicke(int n_qubits, int excitations);
Operator maximally_mixed(int dim);

// StateFile document: {"dim": d, "matrix": [[[re, im], ...], ...]} or
// {"kind": name, "params": {...}} for the builders above.
Operator from_json(const std::string& text);
Operator load(const std::string& path);
std::string to_json(const Operator& rho);

}  // namespace qps::states
