#pragma once

#include <functional>
#include <vector>

namespace rmtedge::quadrature {

using Integrand = std::function<double(double)>;

/// Where a rule's nodes live. Semi-infinite rules come from the map
/// x = start + scale * t / (1 - t) applied to a Gauss-Legendre rule on [0, 1).
struct Domain {
  enum class Kind { Finite, SemiInfinite };
  Kind kind = Kind::Finite;
  double start = 0.0;
  double end = 0.0;  // unused for SemiInfinite
  double scale = 1.0;

  double length() const;  // inf for SemiInfinite
};

struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive
  Domain domain;

  std::size_t size() const { return nodes.size(); }
  double apply(const Integrand& f) const;
};

inline constexpr int kMaxNodes = 2048;

/// m-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree 2m - 1.
QuadratureRule gauss_legendre(int m, double a, double b);

/// m-point rule for (a, inf) built from the rational map; scale is the length
/// over which half of the nodes are spread.
QuadratureRule semiinf_rule(int m, double a, double scale = 1.0);

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // |I_2m - I_m| at the accepting level
  int nodes = 0;       // size of the accepting rule
};

/// Integral over [a, b] by Gauss-Legendre rules of doubling size until two
/// consecutive estimates agree to tol / 2. Throws ConvergenceError past kMaxNodes.
Estimate integrate_estimate(const Integrand& f, double a, double b, double tol);
double integrate(const Integrand& f, double a, double b, double tol);

/// Integral over (a, inf) with the same refinement policy. The integrand must
/// decay at least exponentially; zero values are never multiplied by the
/// (unbounded) Jacobian.
Estimate integrate_semiinf_estimate(const Integrand& f, double a, double tol, double scale = 1.0);
double integrate_semiinf(const Integrand& f, double a, double tol, double scale = 1.0);

}  // namespace rmtedge::quadrature
