#include "rmtedge/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "rmtedge/errors.hpp"

namespace rmtedge::quadrature {

namespace {

struct ReferenceRule {
  std::vector<double> nodes;  // ascending on (-1, 1)
  std::vector<double> weights;
};

// Newton iteration on P_m from the Chebyshev-like guess cos(pi (i + 3/4) / (m + 1/2)).
ReferenceRule build_reference(int m) {
  ReferenceRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = m * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-15) break;
    }
    // Re-evaluate the derivative at the converged node for the weight.
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= m; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = m * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[m - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

const ReferenceRule& reference_rule(int m) {
  static std::mutex mutex;
  static std::array<std::unique_ptr<const ReferenceRule>, kMaxNodes + 1> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(m)];
  if (!slot) slot = std::make_unique<const ReferenceRule>(build_reference(m));
  return *slot;
}

void check_size(int m) {
  if (m <= 0 || m > kMaxNodes) {
    throw ArgumentError("quadrature: rule size must be in [1, " + std::to_string(kMaxNodes) + "]");
  }
}

double sum_rule(const QuadratureRule& rule, const Integrand& f) {
  // Neumaier summation; the semi-infinite Jacobian produces a wide spread of weights.
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double fx = f(rule.nodes[i]);
    if (fx == 0.0) continue;
    const double term = rule.weights[i] * fx;
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

template <class MakeRule>
Estimate refine(const Integrand& f, double tol, MakeRule make_rule, const char* what) {
  if (!(tol > 0.0)) throw ArgumentError(std::string(what) + ": tolerance must be positive");
  int m = 8;
  double previous = make_rule(m).apply(f);
  for (m = 16; m <= kMaxNodes; m *= 2) {
    const double current = make_rule(m).apply(f);
    const double diff = std::abs(current - previous);
    if (!std::isfinite(current)) {
      throw ConvergenceError(std::string(what) + ": non-finite estimate", current, previous);
    }
    if (diff <= tol / 2.0) return {current, diff, m};
    previous = current;
    if (m == kMaxNodes) {
      throw ConvergenceError(std::string(what) + ": no convergence with " +
                                 std::to_string(kMaxNodes) + " nodes",
                             current, previous);
    }
  }
  throw ConvergenceError(std::string(what) + ": no convergence", previous, previous);
}

}  // namespace

double Domain::length() const {
  return kind == Kind::Finite ? end - start : std::numeric_limits<double>::infinity();
}

double QuadratureRule::apply(const Integrand& f) const { return sum_rule(*this, f); }

QuadratureRule gauss_legendre(int m, double a, double b) {
  check_size(m);
  if (!(a < b)) throw ArgumentError("gauss_legendre: need a < b");
  const ReferenceRule& ref = reference_rule(m);
  QuadratureRule rule;
  rule.domain = {Domain::Kind::Finite, a, b, 1.0};
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = mid + half * ref.nodes[i];
    rule.weights[i] = half * ref.weights[i];
  }
  return rule;
}

QuadratureRule semiinf_rule(int m, double a, double scale) {
  check_size(m);
  if (!std::isfinite(a) || !(scale > 0.0)) {
    throw ArgumentError("semiinf_rule: need finite start and positive scale");
  }
  const ReferenceRule& ref = reference_rule(m);
  QuadratureRule rule;
  rule.domain = {Domain::Kind::SemiInfinite, a, std::numeric_limits<double>::infinity(), scale};
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    const double t = 0.5 * (ref.nodes[i] + 1.0);
    const double one_minus = 0.5 * (1.0 - ref.nodes[i]);
    rule.nodes[i] = a + scale * t / one_minus;
    rule.weights[i] = 0.5 * ref.weights[i] * scale / (one_minus * one_minus);
  }
  return rule;
}

Estimate integrate_estimate(const Integrand& f, double a, double b, double tol) {
  if (a == b) return {0.0, 0.0, 0};
  if (a > b) {
    Estimate e = integrate_estimate(f, b, a, tol);
    e.value = -e.value;
    return e;
  }
  return refine(f, tol, [a, b](int m) { return gauss_legendre(m, a, b); }, "integrate");
}

double integrate(const Integrand& f, double a, double b, double tol) {
  return integrate_estimate(f, a, b, tol).value;
}

Estimate integrate_semiinf_estimate(const Integrand& f, double a, double tol, double scale) {
  return refine(f, tol, [a, scale](int m) { return semiinf_rule(m, a, scale); },
                "integrate_semiinf");
}

double integrate_semiinf(const Integrand& f, double a, double tol, double scale) {
  return integrate_semiinf_estimate(f, a, tol, scale).value;
}

}  // namespace rmtedge::quadrature
