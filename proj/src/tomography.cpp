#include "qps/tomography.hpp"

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "qps/special.hpp"

namespace qps::tomography {

double wigner_from_projections(const ProjectionRecord& rec,
                               const std::vector<double>& parity_diag) {
  require(rec.probabilities.size() == parity_diag.size(), "tomography.length",
          "probability and parity-diagonal lengths differ");
  double total = 0.0;
  for (double p : rec.probabilities) {
    require(p >= -1e-9, "tomography.probability", "probabilities must be non-negative");
    total += p;
  }
  double slack = rec.shots > 0 ? 1e-6 : 1e-9;
  require(std::abs(total - 1.0) < slack, "tomography.probability",
          "probabilities must sum to one");
  double acc = 0.0;
  for (std::size_t m = 0; m < parity_diag.size(); ++m)
    acc += rec.probabilities[m] * parity_diag[m];
  return acc;
}

ProjectionRecord simulate_projections(const Operator& rho, double j, double phi, double theta,
                                      double Phi, long shots, std::uint64_t seed) {
  const int dim = su2::dim_of(j);
  require(rho.rows() == dim, "tomography.dim", "state dimension does not match spin");
  Operator u = su2::euler_rotation(j, phi, theta, Phi);
  Operator rotated = u.adjoint() * rho * u;

  ProjectionRecord rec;
  rec.phi = phi;
  rec.theta = theta;
  rec.Phi = Phi;
  rec.probabilities.resize(dim);
  for (int m = 0; m < dim; ++m)
    rec.probabilities[(std::size_t)m] = std::max(0.0, rotated(m, m).real());

  if (shots > 0) {
    require(seed != 0, "tomography.seed", "shot mode needs a nonzero seed");
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> draw(rec.probabilities.begin(), rec.probabilities.end());
    std::vector<long> counts((std::size_t)dim, 0);
    for (long i = 0; i < shots; ++i) ++counts[(std::size_t)draw(rng)];
    for (int m = 0; m < dim; ++m)
      rec.probabilities[(std::size_t)m] = static_cast<double>(counts[(std::size_t)m]) / shots;
    rec.shots = shots;
  }
  return rec;
}

std::vector<GridSample> standard_net(double j) {
  const int side = static_cast<int>(std::lround(4.0 * j + 2.0));
  std::vector<GridSample> net;
  net.reserve((std::size_t)(side * side));
  for (int a = 1; a <= side; ++a)
    for (int b = 0; b < side; ++b)
      net.push_back({pi * a / side, 2.0 * pi * b / side, 0.0});
  return net;
}

std::vector<GridSample> sample_standard_net(const Operator& rho, double j, double s) {
  auto net = standard_net(j);
  for (auto& p : net) p.value = su2::evaluate(rho, j, s, p.theta, p.phi).real();
  return net;
}

ReconstructionReport reconstruct_from_grid(double j, const std::vector<GridSample>& samples,
                                           double s) {
  const int dim = su2::dim_of(j);
  const int lmax = dim - 1;  // 2j
  // Real parameterization of a real band-limited function:
  // columns are Y_l0 (coefficient c_l0, real) and, for m > 0, the pair
  // combinations 2 Re[Y_lm] and -2 Im[Y_lm] (coefficients Re c_lm, Im c_lm).
  const int n_par = dim * dim;
  const int n_samp = static_cast<int>(samples.size());
  require(n_samp >= n_par, "tomography.net",
          "sample net under-determines the band limit (need >= (2j+1)^2 points)");

  Eigen::MatrixXd design(n_samp, n_par);
  Eigen::VectorXd rhs(n_samp);
  for (int r = 0; r < n_samp; ++r) {
    const auto& p = samples[(std::size_t)r];
    rhs(r) = p.value;
    int col = 0;
    double x = std::cos(p.theta);
    for (int l = 0; l <= lmax; ++l) {
      design(r, col++) = scaled_plm(l, 0, x);
      for (int m = 1; m <= l; ++m) {
        double base = scaled_plm(l, m, x);
        design(r, col++) = 2.0 * base * std::cos(m * p.phi);
        design(r, col++) = -2.0 * base * std::sin(m * p.phi);
      }
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double cond = svd.singularValues()(0) / svd.singularValues()(n_par - 1);

  Eigen::MatrixXd normal = design.transpose() * design;
  normal.diagonal().array() += 1e-12;
  Eigen::VectorXd sol = normal.ldlt().solve(design.transpose() * rhs);

  ReconstructionReport rep;
  rep.condition_number = cond;
  rep.coeffs.lmax = lmax;
  rep.coeffs.coeffs.assign((std::size_t)(dim * dim), cd(0.0, 0.0));
  int col = 0;
  for (int l = 0; l <= lmax; ++l) {
    rep.coeffs.at(l, 0) = sol(col++);
    for (int m = 1; m <= l; ++m) {
      double re = sol(col++);
      double im = sol(col++);
      rep.coeffs.at(l, m) = cd(re, im);
      rep.coeffs.at(l, -m) = (m % 2 == 0 ? 1.0 : -1.0) * cd(re, -im);
    }
  }

  Eigen::VectorXd fitted = design * sol;
  for (int r = 0; r < n_samp; ++r)
    rep.fit_residual = std::max(rep.fit_residual, std::abs(fitted(r) - rhs(r)));

  Operator raw = su2::operator_from_expansion(rep.coeffs, j, s);
  rep.hermiticity_residual = hermiticity_defect(raw);
  Operator sym = 0.5 * (raw + raw.adjoint().eval());
  double tr = sym.trace().real();
  rep.trace_renormalization = std::abs(tr - 1.0);
  if (std::abs(tr) > 1e-12) sym /= tr;
  rep.rho = sym;
  return rep;
}

}  // namespace qps::tomography
