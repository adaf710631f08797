#pragma once

#include <vector>

namespace rmtedge::specfun {

/// A real number stored as mantissa * 2^exponent so that quantities such as
/// exp(-y^2/2) at y ~ sqrt(2N) survive without underflow.
///
/// Normalized values keep |mantissa| in [1/2, 1); zero is {0, 0}.
struct ScaledValue {
  double mantissa = 0.0;
  int exponent = 0;

  static ScaledValue from_double(double v);
  static ScaledValue normalized(double mantissa, long exponent);

  /// Plain double, underflowing to 0 or overflowing to inf when out of range.
  double to_double() const;
  /// log2|value|; -inf for zero.
  double log2_abs() const;

  ScaledValue operator*(const ScaledValue& rhs) const;
  ScaledValue operator-() const { return {-mantissa, exponent}; }
};

/// Airy function Ai(x). Throws DomainError for non-finite x.
double airy_ai(double x);

/// Derivative Ai'(x). Same regimes and accuracy as airy_ai.
double airy_ai_prime(double x);

/// Ai and Ai' evaluated together.
struct AiryPair {
  double ai;
  double ai_prime;
};
AiryPair airy_pair(double x);

/// Integral of Ai over (x, inf), anchored on the exact value 1/3 at x = 0.
double airy_tail(double x);

/// Gamma function for x > 0.
double gamma_fn(double x);

/// Orthonormal Hermite functions phi_0(y) .. phi_n(y) (n + 1 entries),
/// phi_k(y) = H_k(y) exp(-y^2/2) / sqrt(2^k k! sqrt(pi)).
std::vector<ScaledValue> hermite_phi_all(double y, int n);

}  // namespace rmtedge::specfun
