#include "rmtedge/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "rmtedge/errors.hpp"
#include "rmtedge/quadrature.hpp"

namespace rmtedge::fredholm {

namespace {

constexpr int kMaxGrid = 512;
constexpr int kStartGrid = 32;
constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTarget = 1e-13;
constexpr double kClampBand = 1e-12;

// Compensated accumulator (Neumaier).
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

double off_diagonal_norm(const SymmetricMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(std::size_t n, std::vector<double> data)
    : n_(n), data_(std::move(data)) {
  if (data_.size() != n * n) throw ArgumentError("SymmetricMatrix: data size mismatch");
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::frobenius_squared() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return s;
}

double SymmetricMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
  return worst;
}

SymmetricMatrix nystrom_discretize(const kernels::KernelFn& kernel, double a, int m) {
  if (m <= 0 || m > kMaxGrid) throw ArgumentError("nystrom_discretize: m must be in [1, 512]");
  const auto rule = quadrature::semiinf_rule(m, a, kernel.length_scale());
  std::vector<double> g = kernel.gram(rule.nodes);
  const std::size_t n = rule.size();
  std::vector<double> root_w(n);
  for (std::size_t i = 0; i < n; ++i) root_w[i] = std::sqrt(rule.weights[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * n + j] *= root_w[i] * root_w[j];
  return SymmetricMatrix(n, std::move(g));
}

SymmetricSpectrum symmetric_eigenvalues(SymmetricMatrix a) {
  const std::size_t n = a.size();
  if (a.asymmetry() > 1e-12) throw ArgumentError("symmetric_eigenvalues: matrix is not symmetric");
  const double target = kOffDiagonalTarget * std::max(1.0, std::sqrt(a.frobenius_squared()));
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > kMaxSweeps) {
      throw NumericalError("symmetric_eigenvalues: Jacobi did not converge in 100 sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p), aqq = a(q, q);
        // Skip rotations that cannot change either diagonal entry.
        if (std::abs(apq) < 1e-300 ||
            (std::abs(app) + 1e20 * std::abs(apq) == std::abs(app) &&
             std::abs(aqq) + 1e20 * std::abs(apq) == std::abs(aqq))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p), arq = a(r, q);
          const double new_rp = arp - s * (arq + tau * arp);
          const double new_rq = arq + s * (arp - tau * arq);
          a(r, p) = a(p, r) = new_rp;
          a(r, q) = a(q, r) = new_rq;
        }
      }
    }
  }
  SymmetricSpectrum spec;
  spec.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) spec.eigenvalues[i] = a(i, i);
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(), std::greater<>());
  return spec;
}

double CountDistribution::mean() const {
  CompensatedSum s;
  for (std::size_t k = 1; k < probs.size(); ++k) s.add(static_cast<double>(k) * probs[k]);
  return s.value();
}

double CountDistribution::total() const {
  CompensatedSum s;
  for (double p : probs) s.add(p);
  return s.value();
}

CountDistribution counting_from_spectrum(std::span<const double> eigenvalues, int k_max) {
  if (k_max < 0) throw ArgumentError("counting_distribution: k_max must be nonnegative");
  std::vector<double> lambda(eigenvalues.begin(), eigenvalues.end());
  std::sort(lambda.begin(), lambda.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });

  CountDistribution out;
  double log_prod = 0.0;
  std::vector<CompensatedSum> e(static_cast<std::size_t>(k_max) + 1);
  e[0].add(1.0);
  for (double l : lambda) {
    if (l >= 1.0) {
      throw NumericalError("counting_distribution: kernel eigenvalue >= 1 (window reaches the bulk)");
    }
    if (l >= 1.0 - kClampBand) {
      l = 1.0 - kClampBand;
      out.clamped = true;
    }
    log_prod += std::log1p(-l);
    const double r = l / (1.0 - l);
    for (int k = k_max; k >= 1; --k) e[static_cast<std::size_t>(k)].add(r * e[static_cast<std::size_t>(k) - 1].value());
  }
  const double prod = std::exp(log_prod);
  out.probs.resize(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) out.probs[static_cast<std::size_t>(k)] = prod * e[static_cast<std::size_t>(k)].value();
  return out;
}

CountDistribution counting_distribution(const kernels::KernelFn& kernel, double a, int k_max,
                                        double tol) {
  if (!(tol > 0.0)) throw ArgumentError("counting_distribution: tolerance must be positive");
  CountDistribution previous;
  for (int m = kStartGrid; m <= kMaxGrid; m *= 2) {
    const auto spectrum = symmetric_eigenvalues(nystrom_discretize(kernel, a, m));
    CountDistribution current = counting_from_spectrum(spectrum.eigenvalues, k_max);
    current.window_start = a;
    current.grid_size = m;
    if (m > kStartGrid) {
      double diff = 0.0;
      for (std::size_t k = 0; k < current.probs.size(); ++k) {
        diff = std::max(diff, std::abs(current.probs[k] - previous.probs[k]));
      }
      current.error_estimate = diff;
      if (diff <= tol) return current;
      if (m == kMaxGrid) {
        throw ConvergenceError("counting_distribution: no convergence with 512 nodes",
                               current.probs[0], previous.probs[0]);
      }
    }
    previous = std::move(current);
  }
  throw ConvergenceError("counting_distribution: no convergence", previous.probs[0], previous.probs[0]);
}

}  // namespace rmtedge::fredholm
