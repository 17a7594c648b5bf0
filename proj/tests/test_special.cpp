#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qps/special.hpp"

using oracle::cd;

TEST_CASE("log_factorial matches the running product") {
  double acc = 0.0;
  for (int n = 1; n <= 60; ++n) {
    acc += std::log(static_cast<double>(n));
    CHECK(qps::log_factorial(n) == doctest::Approx(acc).epsilon(1e-14));
  }
  CHECK(qps::log_factorial(0) == 0.0);
}

TEST_CASE("Clebsch-Gordan coefficients reproduce the tabulated values") {
  for (const auto& c : oracle::cg_table()) {
    double got = qps::clebsch_gordan(c.j1, c.m1, c.j2, c.m2, c.j, c.m);
    CAPTURE(c.j1);
    CAPTURE(c.m1);
    CAPTURE(c.j2);
    CAPTURE(c.m2);
    CAPTURE(c.j);
    CHECK(got == doctest::Approx(c.value).epsilon(1e-13));
  }
}

TEST_CASE("Clebsch-Gordan columns are eigenvectors of the coupled J^2") {
  struct Triple {
    double j1, j2, j;
  };
  for (const Triple& t : {Triple{0.5, 0.5, 1.0}, Triple{1.0, 0.5, 0.5}, Triple{1.5, 1.0, 1.5},
                          Triple{2.0, 2.0, 3.0}}) {
    int d1 = static_cast<int>(std::lround(2 * t.j1 + 1));
    int d2 = static_cast<int>(std::lround(2 * t.j2 + 1));
    oracle::Mat j2op = oracle::coupled_j2(t.j1, t.j2);

    for (double m = -t.j; m <= t.j + 0.25; m += 1.0) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d1 * d2);
      for (int a = 0; a < d1; ++a)
        for (int b = 0; b < d2; ++b) {
          double m1 = t.j1 - a, m2 = t.j2 - b;
          if (std::abs(m1 + m2 - m) > 0.25) continue;
          v(a * d2 + b) = qps::clebsch_gordan(t.j1, m1, t.j2, m2, t.j, m);
        }
      CAPTURE(t.j1);
      CAPTURE(t.j2);
      CAPTURE(t.j);
      CAPTURE(m);
      CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
      double eig = t.j * (t.j + 1.0);
      CHECK((j2op * v - eig * v).norm() == doctest::Approx(0.0).scale(1).epsilon(1e-11));
    }
  }
}

TEST_CASE("Clebsch-Gordan columns are orthonormal across j") {
  double j1 = 1.5, j2 = 1.0;
  double m = 0.5;
  for (double ja = 0.5; ja <= 2.5; ja += 1.0)
    for (double jb = ja; jb <= 2.5; jb += 1.0) {
      double dot = 0.0;
      for (double m1 = -j1; m1 <= j1 + 0.25; m1 += 1.0) {
        double m2 = m - m1;
        if (m2 < -j2 - 0.25 || m2 > j2 + 0.25) continue;
        dot += qps::clebsch_gordan(j1, m1, j2, m2, ja, m) *
               qps::clebsch_gordan(j1, m1, j2, m2, jb, m);
      }
      CHECK(dot == doctest::Approx(ja == jb ? 1.0 : 0.0).scale(1).epsilon(1e-12));
    }
}

TEST_CASE("selection rules return exactly zero") {
  CHECK(qps::clebsch_gordan(1.0, 1.0, 1.0, 1.0, 1.0, 1.0) == 0.0);   // m1+m2 != m
  CHECK(qps::clebsch_gordan(0.5, 0.5, 0.5, 0.5, 2.0, 1.0) == 0.0);   // j out of range
  CHECK(std::abs(qps::clebsch_gordan(1.0, 0.0, 1.0, 0.0, 1.0, 0.0)) < 1e-14);
}

TEST_CASE("spherical harmonics match the closed forms for l <= 2") {
  const double thetas[] = {0.1, 0.7, 1.2, qps::pi / 2, 2.3, 3.0};
  const double phis[] = {0.0, 0.4, 1.9, 4.0, 6.0};
  for (int l = 0; l <= 2; ++l)
    for (int m = -l; m <= l; ++m)
      for (double theta : thetas)
        for (double phi : phis) {
          cd want = oracle::ylm_closed(l, m, theta, phi);
          cd got = qps::spherical_harmonic(l, m, theta, phi);
          CAPTURE(l);
          CAPTURE(m);
          CAPTURE(theta);
          CAPTURE(phi);
          CHECK(std::abs(got - want) < 1e-13);
        }
}

TEST_CASE("spherical harmonics obey the conjugation symmetry at high l") {
  for (int l : {5, 9, 14})
    for (int m = 1; m <= l; m += l / 2 + 1)
      for (double theta : {0.3, 1.1, 2.8}) {
        cd plus = qps::spherical_harmonic(l, m, theta, 0.77);
        cd minus = qps::spherical_harmonic(l, -m, theta, 0.77);
        double sign = (m % 2) ? -1.0 : 1.0;
        CHECK(std::abs(minus - sign * std::conj(plus)) < 1e-12);
      }
}

TEST_CASE("scaled_plm is the m >= 0 harmonic magnitude on the meridian") {
  for (int l : {0, 1, 3, 8})
    for (int m = 0; m <= l; ++m)
      for (double x : {-0.9, -0.2, 0.0, 0.55, 0.98}) {
        cd y = qps::spherical_harmonic(l, m, std::acos(x), 0.0);
        CHECK(qps::scaled_plm(l, m, x) == doctest::Approx(y.real()).scale(1).epsilon(1e-12));
        CHECK(y.imag() == doctest::Approx(0.0).scale(1).epsilon(1e-14));
      }
}

TEST_CASE("Gauss-Legendre rules integrate monomials exactly up to degree 2n-1") {
  std::vector<double> x, w;
  for (int n : {1, 2, 5, 16, 33}) {
    qps::gauss_legendre(n, x, w);
    REQUIRE(x.size() == static_cast<size_t>(n));

    double wsum = 0.0;
    for (double wi : w) wsum += wi;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += w[i] * std::pow(x[i], k);
      double want = (k % 2) ? 0.0 : 2.0 / (k + 1);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(acc == doctest::Approx(want).scale(1).epsilon(1e-13));
    }

    for (int i = 0; i < n; ++i) {
      CHECK(x[i] == doctest::Approx(-x[n - 1 - i]).scale(1).epsilon(1e-14));
      CHECK(w[i] == doctest::Approx(w[n - 1 - i]).epsilon(1e-13));
    }
  }
}
