#pragma once

#include <cstddef>
#include <vector>

#include "qps/types.hpp"

namespace qps {

// Product quadrature on the sphere: Gauss-Legendre in cos(theta) times a
// uniform trapezoid in phi. Weights carry the full surface measure,
// normalized so they sum to total_measure (2j+1 for a spin-j phase space).
struct SphereGrid {
  struct Node {
    double theta;
    double phi;
    double weight;
  };
  std::vector<Node> nodes;
  int exact_degree = 0;     // spherical-harmonic degree integrated exactly
  double total_measure = 0; // sum of weights

  std::size_t size() const { return nodes.size(); }
};

// Minimal product rule exact for all Y_lm with l <= max_degree:
// ceil((max_degree+1)/2) polar nodes, max_degree+1 azimuthal nodes.
SphereGrid sphere_quadrature(int max_degree, double total_measure = 1.0);

template <typename F>
auto integrate(const SphereGrid& g, F&& f) -> decltype(f(0.0, 0.0)) {
  decltype(f(0.0, 0.0)) acc{};
  for (const auto& n : g.nodes) acc += n.weight * f(n.theta, n.phi);
  return acc;
}

}  // namespace qps
