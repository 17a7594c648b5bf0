#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "qps/grid.hpp"
#include "qps/special.hpp"

using oracle::cd;

TEST_CASE("weights sum to the requested total measure") {
  for (int deg : {0, 1, 4, 9, 20})
    for (double total : {1.0, 2.0, 4.0 * qps::pi}) {
      auto g = qps::sphere_quadrature(deg, total);
      double sum = 0.0;
      for (const auto& n : g.nodes) sum += n.weight;
      CHECK(sum == doctest::Approx(total).epsilon(1e-13));
      CHECK(g.exact_degree >= deg);
    }
}

TEST_CASE("harmonics up to the exactness degree integrate to their true values") {
  // With unit total measure the mean of Y_lm over the sphere is
  // delta_{l0} delta_{m0} / sqrt(4 pi).
  int deg = 11;
  auto g = qps::sphere_quadrature(deg, 1.0);
  for (int l = 0; l <= deg; ++l)
    for (int m = -l; m <= l; m += std::max(1, l)) {
      cd acc = qps::integrate(
          g, [&](double t, double p) { return qps::spherical_harmonic(l, m, t, p); });
      cd want = (l == 0) ? cd(1.0 / std::sqrt(4.0 * qps::pi), 0.0) : cd(0.0, 0.0);
      CAPTURE(l);
      CAPTURE(m);
      CHECK(std::abs(acc - want) < 1e-13);
    }
}

TEST_CASE("harmonic products integrate to the orthonormality relation") {
  // Y_l1m1 conj(Y_l2m2) has combined degree l1 + l2; degree 8 covers l <= 4.
  auto g = qps::sphere_quadrature(8, 4.0 * qps::pi);
  for (int l1 : {0, 1, 3})
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 : {1, 4})
        for (int m2 = -l2; m2 <= l2; m2 += 2) {
          cd acc = qps::integrate(g, [&](double t, double p) {
            return qps::spherical_harmonic(l1, m1, t, p) *
                   std::conj(qps::spherical_harmonic(l2, m2, t, p));
          });
          cd want = (l1 == l2 && m1 == m2) ? cd(1.0, 0.0) : cd(0.0, 0.0);
          CAPTURE(l1);
          CAPTURE(m1);
          CAPTURE(l2);
          CAPTURE(m2);
          CHECK(std::abs(acc - want) < 1e-12);
        }
}

TEST_CASE("a degree above the exactness bound is actually resolved by growing the grid") {
  // cos^12(theta) integrates to 4 pi / 13 over the sphere; a degree-12 rule
  // must nail it while the degree-4 rule visibly misses.
  auto f = [](double t, double) { return std::pow(std::cos(t), 12); };
  auto fine = qps::sphere_quadrature(12, 4.0 * qps::pi);
  auto coarse = qps::sphere_quadrature(4, 4.0 * qps::pi);
  double want = 4.0 * qps::pi / 13.0;
  CHECK(qps::integrate(fine, f) == doctest::Approx(want).epsilon(1e-13));
  CHECK(std::abs(qps::integrate(coarse, f) - want) > 1e-3);
}

TEST_CASE("node count follows the product-rule bound") {
  for (int deg : {2, 5, 10}) {
    auto g = qps::sphere_quadrature(deg, 1.0);
    std::size_t polar = static_cast<std::size_t>((deg + 2) / 2);
    std::size_t azimuthal = static_cast<std::size_t>(deg + 1);
    CHECK(g.size() == polar * azimuthal);
  }
}
