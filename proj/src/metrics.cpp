#include "qps/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qps/grid.hpp"
#include "qps/operators.hpp"
#include "qps/su2.hpp"
#include "qps/wootters.hpp"

namespace qps::metrics {

double purity(const Operator& rho) { return (rho * rho).trace().real(); }

double purity_from_samples(const KernelFrame& frame, const std::vector<double>& w) {
  require(w.size() == frame.size(), "metrics.samples", "sample count does not match frame");
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += frame.weight(i) * w[i] * w[i];
  return acc;
}

double fidelity_ps(const KernelFrame& frame, const SampledFunction& f1,
                   const SampledFunction& f2) {
  require(std::abs(f1.s + f2.s) < 1e-12, "metrics.s_pair",
          "fidelity pairing needs ordering parameters (s, -s)");
  require(f1.values.size() == frame.size() && f2.values.size() == frame.size(),
          "metrics.samples", "sample count does not match frame");
  double acc = 0.0;
  for (std::size_t i = 0; i < frame.size(); ++i)
    acc += frame.weight(i) * f1.values[i] * f2.values[i];
  return acc;
}

namespace {

int qubit_count(const Operator& rho) {
  int d = static_cast<int>(rho.rows());
  require(rho.cols() == d, "operator.shape", "operator must be square");
  int n = 0;
  while ((1 << n) < d) ++n;
  require((1 << n) == d, "metrics.dim", "dimension must be a power of two");
  return n;
}

const Operator& single_pauli(int digit) {
  static const Operator table[4] = {Operator::Identity(2, 2), pauli_x(), pauli_y(), pauli_z()};
  return table[digit];
}

Operator pauli_string(int n, std::size_t k) {
  Operator acc = Operator::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) {
    int digit = static_cast<int>((k >> (2 * q)) & 3);
    acc = kron(acc, single_pauli(digit)).eval();
  }
  return acc;
}

// Counter-based generator: each draw i mixes (seed, i) through the splitmix64
// finalizer, so draws are reproducible under any evaluation order.
double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::vector<double> pauli_vector(const Operator& rho) {
  int n = qubit_count(rho);
  std::size_t count = std::size_t{1} << (2 * n);
  double norm = std::sqrt(static_cast<double>(1 << n));
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = (rho * pauli_string(n, k)).trace().real() / norm;
  return out;
}

double fidelity_discrete(const std::vector<double>& f2, const std::vector<double>& f1_dual) {
  require(f2.size() == f1_dual.size(), "metrics.size", "component counts differ");
  double norm = 0.0;
  for (double v : f1_dual) norm += v * v;
  require(std::abs(norm - 1.0) < 1e-8, "metrics.normalization",
          "reference components must satisfy sum F^2 = 1 (pure reference)");
  double acc = 0.0;
  for (std::size_t k = 0; k < f2.size(); ++k) acc += f2[k] * f1_dual[k];
  return acc;
}

EstimationRun dfe_sample(const Operator& target_pure, const Operator& actual, long samples,
                         std::uint64_t seed, const std::string& target_name) {
  require(samples > 0, "dfe.samples", "sample count must be positive");
  require(target_pure.rows() == actual.rows(), "dfe.dim", "state dimensions differ");
  double target_purity = purity(target_pure);
  require(std::abs(target_purity - 1.0) < 1e-8, "dfe.purity", "target state must be pure");

  std::vector<double> f_target = pauli_vector(target_pure);
  std::vector<double> f_actual = pauli_vector(actual);

  std::vector<double> cdf(f_target.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < f_target.size(); ++k) {
    acc += f_target[k] * f_target[k];
    cdf[k] = acc;
  }
  cdf.back() = 1.0;

  double sum = 0.0, sum_sq = 0.0;
  double min_w = std::numeric_limits<double>::infinity(), max_w = 0.0;
  for (long i = 0; i < samples; ++i) {
    double u = counter_uniform(seed, static_cast<std::uint64_t>(i));
    std::size_t k = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    double x = f_actual[k] / f_target[k];
    sum += x;
    sum_sq += x * x;
    double w = std::abs(f_target[k]);
    min_w = std::min(min_w, w);
    max_w = std::max(max_w, w);
  }
  double mean = sum / samples;
  double var = std::max(0.0, sum_sq / samples - mean * mean);

  EstimationRun run;
  run.target = target_name;
  run.samples = samples;
  run.seed = seed;
  run.estimate = mean;
  run.std_error = std::sqrt(var / samples);
  run.min_sampled_weight = min_w;
  run.max_sampled_weight = max_w;
  return run;
}

double trace_distance(const Operator& a, const Operator& b) {
  return 0.5 * trace_norm(a - b);
}

double trace_distance_qubit_ps(const Operator& a, const Operator& b) {
  require(a.rows() == 2 && b.rows() == 2, "metrics.qubit",
          "phase-space trace distance is a qubit identity");
  Operator diff = a - b;
  auto grid = sphere_quadrature(2, 2.0);
  double acc = 0.0;
  for (const auto& node : grid.nodes) {
    double w = (diff * su2::kernel(0.5, 0.0, node.theta, node.phi)).trace().real();
    acc += node.weight * w * w;
  }
  return std::sqrt(0.5 * acc);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// int g(theta, phi) dOmega with the (2j+1)/(4 pi) sin(theta) measure. The
// phi direction is periodic-trapezoid with doubling; the theta direction is
// adaptive in x = cos(theta).
double sphere_integral_adaptive(const std::function<double(double, double)>& g, double j,
                                double tol) {
  auto phi_slice = [&](double phi) {
    return integrate_adaptive([&](double x) { return g(std::acos(std::clamp(x, -1.0, 1.0)), phi); },
                              -1.0, 1.0, tol * 0.1);
  };
  int n = 16;
  double prev = 0.0;
  for (int iter = 0;; ++iter) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += phi_slice(2.0 * pi * i / n);
    acc *= 2.0 * pi / n;
    double total = acc * (2.0 * j + 1.0) / (4.0 * pi);
    if (iter > 0 && std::abs(total - prev) < tol) return total;
    require(n <= 4096, "metrics.quadrature", "sphere integral failed to converge");
    prev = total;
    n *= 2;
  }
}

}  // namespace

double negativity_volume(const Operator& rho, double j, double tol) {
  require(rho.rows() == su2::dim_of(j), "metrics.dim", "state dimension does not match spin");
  require(std::abs(rho.trace().real() - 1.0) < 1e-8, "metrics.trace",
          "negativity is defined for unit-trace states");
  auto exp0 = su2::harmonic_expansion(rho, j, 0.0);
  double integral = sphere_integral_adaptive(
      [&](double theta, double phi) { return std::abs(exp0.eval(theta, phi).real()); }, j, tol);
  double v = 0.5 * (integral - 1.0);
  require(v >= -1e-10, "metrics.negativity", "negative volume fell below zero");
  return std::max(v, 0.0);
}

double negativity_volume_discrete(const Operator& rho) {
  auto w = wootters::wigner(rho);
  double acc = 0.0;
  for (double v : w) acc += 0.5 * std::abs(v);
  double vol = 0.5 * (acc - 1.0);
  require(vol >= -1e-10, "metrics.negativity", "negative volume fell below zero");
  return std::max(vol, 0.0);
}

double wehrl_entropy(const Operator& rho, double j, double tol) {
  require(rho.rows() == su2::dim_of(j), "metrics.dim", "state dimension does not match spin");
  auto exp_q = su2::harmonic_expansion(rho, j, -1.0);
  return sphere_integral_adaptive(
      [&](double theta, double phi) {
        double q = exp_q.eval(theta, phi).real();
        require(q > -1e-10, "metrics.wehrl", "Q function must be non-negative");
        return q <= 0.0 ? 0.0 : -q * std::log(q);
      },
      j, tol);
}

double expectation_from_moments(const Operator& rho, double j, SpinAxis which) {
  require(rho.rows() == su2::dim_of(j), "metrics.dim", "state dimension does not match spin");
  auto grid = sphere_quadrature(static_cast<int>(4.0 * j) + 2, 2.0 * j + 1.0);
  auto w = su2::evaluate_grid(rho, j, 0.0, grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    double theta = grid.nodes[i].theta, phi = grid.nodes[i].phi;
    double f = 0.0;
    switch (which) {
      case SpinAxis::X: f = std::sin(theta) * std::cos(phi); break;
      case SpinAxis::Y: f = -std::sin(theta) * std::sin(phi); break;
      case SpinAxis::Z: f = std::cos(theta); break;
    }
    acc += grid.nodes[i].weight * f * w[i];
  }
  return std::sqrt(j * (j + 1.0)) * acc;
}

}  // namespace qps::metrics
