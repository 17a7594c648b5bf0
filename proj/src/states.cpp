#include "qps/states.hpp"

#include <cmath>

#include "json.hpp"

#include "qps/hw.hpp"
#include "qps/io.hpp"
#include "qps/su2.hpp"

namespace qps::states {

namespace {

Operator pure(const Vec& v) { return v * v.adjoint() / v.squaredNorm(); }

}  // namespace

Operator fock(int n_max, int n) {
  require(n >= 0 && n <= n_max, "state.fock", "Fock level outside the truncation");
  return pure(hw::fock_state(n_max, n));
}

Operator coherent(int n_max, cd alpha) { return pure(hw::coherent_state(n_max, alpha)); }

Operator spin_up(double j) {
  Vec v = Vec::Zero(su2::dim_of(j));
  v(0) = 1.0;
  return pure(v);
}

Operator spin_down(double j) {
  Vec v = Vec::Zero(su2::dim_of(j));
  v(v.size() - 1) = 1.0;
  return pure(v);
}

Operator spin_coherent(double j, double theta, double phi) {
  return pure(su2::coherent_state(j, theta, phi));
}

Operator ghz(int n_qubits) {
  require(n_qubits >= 1 && n_qubits <= 16, "state.qubits", "supported range is 1..16 qubits");
  Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Vec v = Vec::Zero(dim);
  v(0) = 1.0 / std::sqrt(2.0);
  v(dim - 1) = 1.0 / std::sqrt(2.0);
  return pure(v);
}

Operator w_state(int n_qubits) {
  require(n_qubits >= 1 && n_qubits <= 16, "state.qubits", "supported range is 1..16 qubits");
  Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Vec v = Vec::Zero(dim);
  for (int i = 0; i < n_qubits; ++i) v(Eigen::Index{1} << i) = 1.0 / std::sqrt(double(n_qubits));
  return pure(v);
}

Operator bell(int which) {
  require(which >= 0 && which < 4, "state.bell", "Bell index must be 0..3");
  Vec v = Vec::Zero(4);
  double r = 1.0 / std::sqrt(2.0);
  if (which < 2) {
    v(0) = r;
    v(3) = which == 0 ? r : -r;
  } else {
    v(1) = r;
    v(2) = which == 2 ? r : -r;
  }
  return pure(v);
}

Operator dicke(int n_qubits, int excitations) {
  require(n_qubits >= 1 && n_qubits <= 16, "state.qubits", "supported range is 1..16 qubits");
  require(excitations >= 0 && excitations <= n_qubits, "state.dicke",
          "excitation count must be 0..n");
  Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Vec v = Vec::Zero(dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    if (__builtin_popcountll(static_cast<unsigned long long>(b)) == excitations) v(b) = 1.0;
  return pure(v);
}

Operator maximally_mixed(int dim) {
  require(dim >= 1, "state.dim", "dimension must be positive");
  return Operator::Identity(dim, dim) / dim;
}

namespace {

using nlohmann::json;

double num(const json& params, const std::string& key, double fallback) {
  if (!params.contains(key)) return fallback;
  require(params[key].is_number(), "state.params", "parameter '" + key + "' must be a number");
  return params[key].get<double>();
}

int integer(const json& params, const std::string& key, int fallback) {
  double v = num(params, key, fallback);
  require(std::abs(v - std::round(v)) < 1e-9, "state.params",
          "parameter '" + key + "' must be an integer");
  return static_cast<int>(std::lround(v));
}

Operator from_kind(const json& doc) {
  std::string kind = doc["kind"].get<std::string>();
  json params = doc.value("params", json::object());
  if (kind == "fock")
    return fock(integer(params, "cutoff", hw::default_cutoff), integer(params, "n", 0));
  if (kind == "coherent")
    return coherent(integer(params, "cutoff", hw::default_cutoff),
                    cd(num(params, "alpha_re", 0.0), num(params, "alpha_im", 0.0)));
  if (kind == "spin_up") return spin_up(num(params, "j", 0.5));
  if (kind == "spin_down") return spin_down(num(params, "j", 0.5));
  if (kind == "spin_coherent")
    return spin_coherent(num(params, "j", 0.5), num(params, "theta", 0.0),
                         num(params, "phi", 0.0));
  if (kind == "ghz") return ghz(integer(params, "qubits", 3));
  if (kind == "w_state") return w_state(integer(params, "qubits", 3));
  if (kind == "bell") return bell(integer(params, "which", 0));
  if (kind == "dicke")
    return dicke(integer(params, "qubits", 3), integer(params, "excitations", 1));
  if (kind == "mixed") return maximally_mixed(integer(params, "dim", 2));
  fail("state.kind", "unknown state kind '" + kind + "'");
}

}  // namespace

Operator from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail("state.parse", std::string("state file is not valid JSON: ") + e.what());
  }
  require(doc.is_object(), "state.schema", "state document must be a JSON object");

  if (doc.contains("kind")) return from_kind(doc);

  require(doc.contains("dim") && doc.contains("matrix"), "state.schema",
          "state document needs either kind or dim+matrix");
  int dim = doc["dim"].get<int>();
  require(dim >= 1, "state.dim", "dimension must be positive");
  const json& rows = doc["matrix"];
  require(rows.is_array() && static_cast<int>(rows.size()) == dim, "state.schema",
          "matrix must have dim rows");
  Operator rho(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = rows[(std::size_t)r];
    require(row.is_array() && static_cast<int>(row.size()) == dim, "state.schema",
            "matrix row " + std::to_string(r) + " must have dim entries");
    for (int c = 0; c < dim; ++c) {
      const json& cell = row[(std::size_t)c];
      require(cell.is_array() && cell.size() == 2 && cell[0].is_number() && cell[1].is_number(),
              "state.schema", "matrix entries must be [re, im] pairs");
      rho(r, c) = cd(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  validate_density(rho);
  return rho;
}

Operator load(const std::string& path) { return from_json(read_file(path)); }

std::string to_json(const Operator& rho) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rho.cols(); ++c)
      row.push_back(json::array({rho(r, c).real(), rho(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  json doc;
  doc["dim"] = rho.rows();
  doc["matrix"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace qps::states
