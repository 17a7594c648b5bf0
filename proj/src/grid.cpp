#include "qps/grid.hpp"

#include <cmath>

#include "qps/special.hpp"

namespace qps {

SphereGrid sphere_quadrature(int max_degree, double total_measure) {
  require(max_degree >= 0, "grid.degree", "quadrature degree must be non-negative");
  int n_theta = (max_degree + 2) / 2;
  if (n_theta < 1) n_theta = 1;
  int n_phi = max_degree + 1;

  std::vector<double> x, w;
  gauss_legendre(n_theta, x, w);

  SphereGrid g;
  g.exact_degree = max_degree;
  g.total_measure = total_measure;
  g.nodes.reserve((size_t)(n_theta * n_phi));
  // Gauss-Legendre integrates d(cos theta) over [-1,1] with weight sum 2; the
  // phi rule contributes 2 pi / n_phi per node. Scale so weights sum to
  // total_measure, i.e. multiply by total_measure / (4 pi).
  double scale = total_measure / (4.0 * pi) * (2.0 * pi / n_phi);
  for (int i = 0; i < n_theta; ++i) {
    double theta = std::acos(x[(size_t)i]);
    for (int k = 0; k < n_phi; ++k) {
      double phi = 2.0 * pi * k / n_phi;
      g.nodes.push_back({theta, phi, w[(size_t)i] * scale});
    }
  }
  return g;
}

}  // namespace qps
