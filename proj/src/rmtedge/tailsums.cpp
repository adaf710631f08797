#include "rmtedge/tailsums.hpp"

#include <cmath>
#include <numbers>

#include "rmtedge/errors.hpp"
#include "rmtedge/kernels.hpp"
#include "rmtedge/quadrature.hpp"
#include "rmtedge/specfun.hpp"

namespace rmtedge::tailsums {

namespace {

constexpr double kMinWindow = -10.0;
constexpr int kMaxGueN = 2000;

void check_q(double q) {
  if (!std::isfinite(q) || q < 0.0) throw DomainError("tail sum: q must be finite and >= 0");
}

// int_a^inf (x - a)^q g(x) dx. For non-integer q the substitution x = a + u^2
// turns the endpoint singularity into the smooth factor u^{2q + 1}.
double moment_integral(const quadrature::Integrand& g, double a, double q, double tol,
                       double scale = 1.0) {
  if (q == std::floor(q)) {
    return quadrature::integrate_semiinf(
        [&](double x) {
          const double v = g(x);
          return v == 0.0 ? 0.0 : std::pow(x - a, q) * v;
        },
        a, tol, scale);
  }
  return quadrature::integrate_semiinf(
      [&](double u) {
        const double v = g(a + u * u);
        return v == 0.0 ? 0.0 : 2.0 * std::pow(u, 2.0 * q + 1.0) * v;
      },
      0.0, tol, std::sqrt(scale));
}

}  // namespace

GammaFunctions::GammaFunctions(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("GammaFunctions: gamma must lie in (0, 1]");
}

double GammaFunctions::lambda() const { return bulk_edge(gamma_); }

double GammaFunctions::lambda_prime() const { return 1.0 + 1.0 / std::sqrt(gamma_); }

double GammaFunctions::tau() const {
  const double r = std::sqrt(gamma_);
  return r * std::pow(r + 1.0, 4.0 / 3.0);
}

double GammaFunctions::sigma() const { return gamma_ * std::cbrt(1.0 + std::sqrt(gamma_)); }

double bulk_edge(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("bulk_edge: c must be positive");
  const double r = 1.0 + std::sqrt(c);
  return r * r;
}

EdgeScaling EdgeScaling::gue(int N) {
  if (N <= 0) throw ArgumentError("EdgeScaling: N must be positive");
  EdgeScaling s;
  s.ensemble = Ensemble::GUE;
  s.N = N;
  s.mu = std::sqrt(2.0 * N);
  s.scale = 1.0 / (std::sqrt(2.0) * std::pow(static_cast<double>(N), 1.0 / 6.0));
  return s;
}

EdgeScaling EdgeScaling::wishart(int N, int n) {
  if (N <= 0 || n <= 0) throw ArgumentError("EdgeScaling: N and n must be positive");
  if (N > n) throw ArgumentError("EdgeScaling: Wishart scaling needs N <= n");
  EdgeScaling s;
  s.ensemble = Ensemble::Wishart;
  s.N = N;
  s.n = n;
  s.gamma_N = static_cast<double>(N) / n;
  const double nh_big = N + 0.5, nh_small = n + 0.5;
  const double root = std::sqrt(nh_big) + std::sqrt(nh_small);
  s.mu = root * root;
  const double g = nh_big / nh_small;
  const double c = std::cbrt(1.0 + std::sqrt(g)) * (1.0 + 1.0 / std::sqrt(g));
  s.scale = c * std::cbrt(nh_big);
  return s;
}

double cq_closed(double q) {
  check_q(q);
  const double a = (2.0 * q + 9.0) / 6.0;
  return 2.0 * specfun::gamma_fn(q + 1.0) /
         (std::sqrt(std::numbers::pi) * std::pow(12.0, a) * specfun::gamma_fn(a));
}

CqQuadrature cq_quadrature_routes(double q) {
  check_q(q);
  constexpr double tol = 1e-12;
  const double single =
      moment_integral(
          [](double x) {
            const double a = specfun::airy_ai(x);
            return x * a * a;
          },
          0.0, q, tol) /
      (q + 1.0);
  const double dbl = moment_integral([](double x) { return kernels::airy_kernel_diag(x); }, 0.0, q, tol);
  return {single, dbl};
}

double cq_quadrature(double q) { return cq_quadrature_routes(q).single; }

double gue_expected_tailsum(int N, double q, double tol) {
  check_q(q);
  if (N <= 0 || N > kMaxGueN) throw ArgumentError("gue_expected_tailsum: N must be in [1, 2000]");
  const EdgeScaling s = EdgeScaling::gue(N);
  // Integrate in the edge variable x, y = mu + tau x.
  const double integral =
      moment_integral([&](double x) { return kernels::gue_cd_diag(N, s.mu + s.scale * x); }, 0.0, q,
                      tol);
  return std::pow(2.0 / N, q / 2.0) * std::pow(s.scale, q + 1.0) * integral;
}

WishartLimit wishart_limit_tailsum(double gamma, double q, double s, double tol) {
  check_q(q);
  const GammaFunctions g(gamma);
  if (!std::isfinite(s) || s < kMinWindow) throw DomainError("wishart_limit_tailsum: s must be >= -10");
  const double integral = moment_integral([](double x) { return kernels::wishart_limit_diag(x); }, s, q, tol);
  return {integral, std::pow(g.tau(), q)};
}

WishartConstant wishart_c0(double tol) {
  WishartConstant c;
  c.airy_part = quadrature::integrate_semiinf([](double x) { return kernels::airy_kernel_diag(x); }, 0.0, tol);
  c.boundary_part = quadrature::integrate_semiinf(
      [](double x) { return 0.5 * specfun::airy_ai(x) * (1.0 - specfun::airy_tail(x)); }, 0.0, tol);
  c.total = quadrature::integrate_semiinf([](double x) { return kernels::wishart_limit_diag(x); }, 0.0, tol);
  return c;
}

double delta_N(double c_N, const EdgeScaling& scaling) {
  if (scaling.ensemble != EdgeScaling::Ensemble::Wishart) {
    throw ArgumentError("delta_N: needs a Wishart scaling");
  }
  if (!(c_N > 0.0 && c_N < 2.0)) throw DomainError("delta_N: c_N must lie in (0, 2)");
  return (scaling.n * bulk_edge(c_N) - scaling.mu) / scaling.scale;
}

}  // namespace rmtedge::tailsums
