#include "rmtedge/kernels.hpp"

#include <cmath>
#include <string>

#include "rmtedge/errors.hpp"
#include "rmtedge/quadrature.hpp"
#include "rmtedge/specfun.hpp"

namespace rmtedge::kernels {

using specfun::ScaledValue;

namespace {

constexpr double kMinAiryArgument = -10.0;
constexpr double kDiagTol = 1e-12;

void check_order(int n) {
  if (n <= 0) throw ArgumentError("gue_cd_kernel: N must be positive");
}

void check_finite(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("kernel: non-finite argument");
}

void check_airy_domain(double x, const char* fn) {
  if (!std::isfinite(x)) throw DomainError(std::string(fn) + ": non-finite argument");
  if (x < kMinAiryArgument) throw DomainError(std::string(fn) + ": argument below -10");
}

double sum_of_squares(const std::vector<ScaledValue>& phi, int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const ScaledValue& p = phi[static_cast<std::size_t>(k)];
    s += std::ldexp(p.mantissa * p.mantissa, 2 * p.exponent);
  }
  return s;
}

double sum_of_products(const std::vector<ScaledValue>& a, const std::vector<ScaledValue>& b,
                       int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    s += (a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)]).to_double();
  }
  return s;
}

// sqrt(N/2) [phi_N(x) phi_{N-1}(y) - phi_{N-1}(x) phi_N(y)] / (x - y)
double cd_quotient(const std::vector<ScaledValue>& px, const std::vector<ScaledValue>& py, int n,
                   double x, double y) {
  const std::size_t hi = static_cast<std::size_t>(n), lo = hi - 1;
  const double a = (px[hi] * py[lo]).to_double();
  const double b = (px[lo] * py[hi]).to_double();
  return std::sqrt(0.5 * n) * (a - b) / (x - y);
}

double airy_offdiag_integral(double x, double y) {
  return quadrature::integrate_semiinf(
      [x, y](double z) { return specfun::airy_ai(x + z) * specfun::airy_ai(y + z); }, 0.0,
      kDiagTol);
}

}  // namespace

KernelFn::KernelFn(std::string label, Eval eval, Diag diag, double length_scale, Gram gram)
    : label_(std::move(label)),
      eval_(std::move(eval)),
      diag_(std::move(diag)),
      length_scale_(length_scale),
      gram_(std::move(gram)) {
  if (!eval_ || !diag_) throw ArgumentError("KernelFn: eval and diag are required");
  if (!(length_scale_ > 0.0)) throw ArgumentError("KernelFn: length scale must be positive");
}

std::vector<double> KernelFn::gram(std::span<const double> nodes) const {
  if (gram_) return gram_(nodes);
  const std::size_t m = nodes.size();
  std::vector<double> g(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    g[i * m + i] = diag_(nodes[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const double v = eval_(nodes[i], nodes[j]);
      g[i * m + j] = v;
      g[j * m + i] = v;
    }
  }
  return g;
}

double gue_cd_diag(int n, double y) {
  check_order(n);
  return sum_of_squares(specfun::hermite_phi_all(y, n - 1), n);
}

double gue_cd_direct(int n, double x, double y) {
  check_order(n);
  check_finite(x, y);
  return sum_of_products(specfun::hermite_phi_all(x, n - 1), specfun::hermite_phi_all(y, n - 1),
                         n);
}

double gue_cd_quotient(int n, double x, double y) {
  check_order(n);
  check_finite(x, y);
  if (x == y) throw ArgumentError("gue_cd_quotient: needs x != y");
  return cd_quotient(specfun::hermite_phi_all(x, n), specfun::hermite_phi_all(y, n), n, x, y);
}

KernelFn gue_cd_kernel(int n) {
  check_order(n);
  auto eval = [n](double x, double y) {
    check_finite(x, y);
    const auto px = specfun::hermite_phi_all(x, n);
    const auto py = specfun::hermite_phi_all(y, n);
    if (std::abs(x - y) <= kConfluentThreshold) return sum_of_products(px, py, n);
    return cd_quotient(px, py, n, x, y);
  };
  auto diag = [n](double y) {
    check_finite(y, y);
    return gue_cd_diag(n, y);
  };
  auto gram = [n](std::span<const double> nodes) {
    const std::size_t m = nodes.size();
    std::vector<std::vector<ScaledValue>> phi(m);
    for (std::size_t i = 0; i < m; ++i) phi[i] = specfun::hermite_phi_all(nodes[i], n);
    std::vector<double> g(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      g[i * m + i] = sum_of_squares(phi[i], n);
      for (std::size_t j = 0; j < i; ++j) {
        const double v = std::abs(nodes[i] - nodes[j]) <= kConfluentThreshold
                             ? sum_of_products(phi[i], phi[j], n)
                             : cd_quotient(phi[i], phi[j], n, nodes[i], nodes[j]);
        g[i * m + j] = v;
        g[j * m + i] = v;
      }
    }
    return g;
  };
  // Eigenvalue spacing at the soft edge sqrt(2N) is of order N^{-1/6} / sqrt(2).
  const double scale = 1.0 / (std::sqrt(2.0) * std::pow(static_cast<double>(n), 1.0 / 6.0));
  return KernelFn("gue_cd(N=" + std::to_string(n) + ")", eval, diag, scale, gram);
}

double airy_kernel_diag(double x) {
  check_airy_domain(x, "airy_kernel_diag");
  return quadrature::integrate_semiinf(
      [x](double z) {
        const double a = specfun::airy_ai(x + z);
        return a * a;
      },
      0.0, kDiagTol);
}

double airy_kernel_diag_closed(double x) {
  const auto [ai, aip] = specfun::airy_pair(x);
  return aip * aip - x * ai * ai;
}

KernelFn airy_kernel() {
  auto eval = [](double x, double y) {
    check_finite(x, y);
    if (std::abs(x - y) <= kConfluentThreshold) return airy_offdiag_integral(x, y);
    const auto ax = specfun::airy_pair(x);
    const auto ay = specfun::airy_pair(y);
    return (ax.ai * ay.ai_prime - ax.ai_prime * ay.ai) / (x - y);
  };
  auto diag = [](double x) { return airy_kernel_diag(x); };
  auto gram = [](std::span<const double> nodes) {
    const std::size_t m = nodes.size();
    std::vector<specfun::AiryPair> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = specfun::airy_pair(nodes[i]);
    std::vector<double> g(m * m);
    for (std::size_t i = 0; i < m; ++i) {
      g[i * m + i] = airy_kernel_diag(nodes[i]);
      for (std::size_t j = 0; j < i; ++j) {
        const double dx = nodes[i] - nodes[j];
        const double v = std::abs(dx) <= kConfluentThreshold
                             ? airy_offdiag_integral(nodes[i], nodes[j])
                             : (a[i].ai * a[j].ai_prime - a[i].ai_prime * a[j].ai) / dx;
        g[i * m + j] = v;
        g[j * m + i] = v;
      }
    }
    return g;
  };
  return KernelFn("airy", eval, diag, 1.0, gram);
}

double wishart_limit_diag(double x) {
  check_airy_domain(x, "wishart_limit_diag");
  return airy_kernel_diag(x) + 0.5 * specfun::airy_ai(x) * (1.0 - specfun::airy_tail(x));
}

}  // namespace rmtedge::kernels
