#include "rmtedge/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rmtedge/errors.hpp"
#include "rmtedge/quadrature.hpp"

namespace rmtedge::specfun {

namespace {

// Ai(0) and -Ai'(0).
constexpr long double kAiryC1 = 0.355028053887817239260063186004183176L;
constexpr long double kAiryC2 = 0.258819403792806798405183560189203963L;

// Below kAsymptoticNegative and above kAsymptoticPositive the asymptotic
// expansions are accurate to better than 1e-13 absolute. In between the
// Maclaurin series is summed in extended precision; its largest term is
// about exp(2/3 |x|^{3/2}), which stays below 4e6 on this range.
constexpr double kAsymptoticPositive = 6.0;
constexpr double kAsymptoticNegative = -8.0;

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": non-finite argument");
  }
}

AiryPair airy_maclaurin(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  // f = sum a_k x^{3k}, g = sum b_k x^{3k+1}; fp, gp their derivatives.
  long double tf = 1.0L, tg = x;
  long double tfp = x * x / 2.0L, tgp = 1.0L;
  long double f = tf, g = tg, fp = tfp, gp = tgp;
  for (int k = 1; k < 200; ++k) {
    const long double k3 = 3.0L * k;
    tf *= x3 / ((k3 - 1.0L) * k3);
    tg *= x3 / (k3 * (k3 + 1.0L));
    tgp *= x3 / ((k3 - 2.0L) * k3);
    if (k > 1) tfp *= x3 / ((k3 - 1.0L) * (k3 - 3.0L));
    f += tf;
    g += tg;
    gp += tgp;
    if (k > 1) fp += tfp;
    const long double scale = fabsl(f) + fabsl(g) + fabsl(fp) + fabsl(gp) + 1.0L;
    if (fabsl(tf) + fabsl(tg) + fabsl(tfp) + fabsl(tgp) < 1e-22L * scale) break;
  }
  return {static_cast<double>(kAiryC1 * f - kAiryC2 * g),
          static_cast<double>(kAiryC1 * fp - kAiryC2 * gp)};
}

// u_k and v_k coefficients of the Airy asymptotic expansions.
struct AsymptoticCoefficients {
  static constexpr int kCount = 40;
  double u[kCount];
  double v[kCount];

  constexpr AsymptoticCoefficients() : u{}, v{} {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < kCount; ++k) {
      const double kd = k;
      u[k] = u[k - 1] * (6 * kd - 5) * (6 * kd - 3) * (6 * kd - 1) / ((2 * kd - 1) * 216.0 * kd);
      v[k] = -(6 * kd + 1) / (6 * kd - 1) * u[k];
    }
  }
};
constexpr AsymptoticCoefficients kCoef{};

// Sums sum_k (-1)^k c[first + stride*k] zeta^{-(first + stride*k)}, stopping at the
// smallest term.
double asymptotic_series(const double* c, int first, int stride, double zeta) {
  double sum = 0.0;
  double last = std::numeric_limits<double>::infinity();
  double sign = 1.0;
  for (int j = first; j < AsymptoticCoefficients::kCount; j += stride) {
    const double term = sign * c[j] * std::pow(zeta, -j);
    if (std::abs(term) > last) break;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    last = std::abs(term);
    sign = -sign;
  }
  return sum;
}

AiryPair airy_asymptotic_positive(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double e = std::exp(-zeta);
  if (e == 0.0) return {0.0, -0.0};
  const double x14 = std::sqrt(std::sqrt(x));
  const double pref = e / (2.0 * std::sqrt(std::numbers::pi));
  return {pref / x14 * asymptotic_series(kCoef.u, 0, 1, zeta),
          -pref * x14 * asymptotic_series(kCoef.v, 0, 1, zeta)};
}

AiryPair airy_asymptotic_negative(double x) {
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double z14 = std::sqrt(std::sqrt(z));
  const double phase = zeta - std::numbers::pi / 4.0;
  const double c = std::cos(phase), s = std::sin(phase);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double ue = asymptotic_series(kCoef.u, 0, 2, zeta);
  const double uo = asymptotic_series(kCoef.u, 1, 2, zeta);
  const double ve = asymptotic_series(kCoef.v, 0, 2, zeta);
  const double vo = asymptotic_series(kCoef.v, 1, 2, zeta);
  return {(c * ue + s * uo) / (sqrt_pi * z14), z14 / sqrt_pi * (s * ve - c * vo)};
}

}  // namespace

ScaledValue ScaledValue::from_double(double v) { return normalized(v, 0); }

ScaledValue ScaledValue::normalized(double mantissa, long exponent) {
  if (mantissa == 0.0) return {};
  int e = 0;
  const double m = std::frexp(mantissa, &e);
  return {m, static_cast<int>(exponent + e)};
}

double ScaledValue::to_double() const { return std::ldexp(mantissa, exponent); }

double ScaledValue::log2_abs() const {
  if (mantissa == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log2(std::abs(mantissa)) + exponent;
}

ScaledValue ScaledValue::operator*(const ScaledValue& rhs) const {
  return normalized(mantissa * rhs.mantissa, static_cast<long>(exponent) + rhs.exponent);
}

AiryPair airy_pair(double x) {
  require_finite(x, "airy_ai");
  if (x >= kAsymptoticPositive) return airy_asymptotic_positive(x);
  if (x <= kAsymptoticNegative) return airy_asymptotic_negative(x);
  return airy_maclaurin(x);
}

double airy_ai(double x) { return airy_pair(x).ai; }

double airy_ai_prime(double x) { return airy_pair(x).ai_prime; }

double airy_tail(double x) {
  require_finite(x, "airy_tail");
  // Ai vanishes in double precision beyond this point.
  constexpr double kUnderflow = 110.0;
  auto ai = [](double z) { return airy_ai(z); };
  // Panels [0,1], [1,2], [2,4], ... keep each Gauss-Legendre rule on a
  // region where Ai varies on a comparable scale.
  const double end = std::min(std::abs(x), kUnderflow);
  const double sign = x < 0 ? -1.0 : 1.0;
  double integral = 0.0;
  double lo = 0.0, hi = 1.0;
  while (lo < end) {
    const double top = std::min(hi, end);
    integral += sign < 0 ? quadrature::integrate(ai, -top, -lo, 1e-15)
                         : quadrature::integrate(ai, lo, top, 1e-15);
    lo = hi;
    hi = 2.0 * hi;
  }
  return 1.0 / 3.0 - sign * integral;
}

double gamma_fn(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("gamma_fn: argument must be finite and positive");
  }
  return std::tgamma(x);
}

std::vector<ScaledValue> hermite_phi_all(double y, int n) {
  require_finite(y, "hermite_phi_all");
  if (n < 0) throw ArgumentError("hermite_phi_all: negative order");
  std::vector<ScaledValue> out(static_cast<std::size_t>(n) + 1);
  // Beyond this the Gaussian factor is below 2^-(10^9) and no polynomial
  // growth of order <= 10^4 can lift phi_k back into any representable range.
  if (std::abs(y) > 3.0e4) return out;

  // phi_0 = pi^{-1/4} exp(-y^2/2) = pi^{-1/4} 2^t with t = -y^2 / (2 ln 2).
  const double t = -0.5 * y * y / std::numbers::ln2;
  const double t_floor = std::floor(t);
  long exponent = static_cast<long>(t_floor);
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp2(t - t_floor);
  double prev = 0.0;
  out[0] = ScaledValue::normalized(cur, exponent);

  constexpr double kHigh = 0x1p512;
  constexpr double kLow = 0x1p-512;
  for (int k = 0; k < n; ++k) {
    const double kd = k;
    const double next = y * std::sqrt(2.0 / (kd + 1.0)) * cur - std::sqrt(kd / (kd + 1.0)) * prev;
    prev = cur;
    cur = next;
    const double big = std::max(std::abs(cur), std::abs(prev));
    if (big > kHigh || (big < kLow && big != 0.0)) {
      int shift = 0;
      std::frexp(big, &shift);
      cur = std::ldexp(cur, -shift);
      prev = std::ldexp(prev, -shift);
      exponent += shift;
    }
    out[static_cast<std::size_t>(k) + 1] = ScaledValue::normalized(cur, exponent);
  }
  return out;
}

}  // namespace rmtedge::specfun
