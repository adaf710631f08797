#pragma once

namespace rmtedge::tailsums {

/// Functions of the limiting aspect ratio gamma = lim N/n in (0, 1].
class GammaFunctions {
 public:
  explicit GammaFunctions(double gamma);

  double gamma() const { return gamma_; }
  /// Upper bulk edge (1 + sqrt(gamma))^2.
  double lambda() const;
  /// d lambda / d gamma = 1 + 1/sqrt(gamma).
  double lambda_prime() const;
  /// Tracy-Widom scale sqrt(gamma) (1 + sqrt(gamma))^{4/3}.
  double tau() const;
  /// gamma (1 + sqrt(gamma))^{1/3} = tau / lambda'.
  double sigma() const;

 private:
  double gamma_;
};

/// (1 + sqrt(c))^2, for any c > 0.
double bulk_edge(double c);

/// Centering and scale of the soft edge for a finite ensemble.
///
/// GUE (joint density exp(-sum y^2) Delta^2): mu = sqrt(2N), scale = 1 / (sqrt 2 N^{1/6}).
/// Real Wishart eigenvalues y of X X^T: mu = (sqrt(N + 1/2) + sqrt(n + 1/2))^2,
/// scale = c(N_h / n_h) N_h^{1/3} with c(g) = (1 + sqrt g)^{1/3} (1 + 1/sqrt g).
struct EdgeScaling {
  enum class Ensemble { GUE, Wishart };
  Ensemble ensemble = Ensemble::GUE;
  int N = 0;
  int n = 0;           // Wishart only
  double mu = 0.0;
  double scale = 0.0;
  double gamma_N = 0.0;  // N / n, Wishart only

  static EdgeScaling gue(int N);
  static EdgeScaling wishart(int N, int n);
};

/// c_q from the Gamma-function closed form.
double cq_closed(double q);

/// c_q by quadrature along two routes that must agree.
struct CqQuadrature {
  double single;           // (q + 1)^{-1} int_0^inf x^{q+1} Ai(x)^2 dx
  double double_integral;  // int_0^inf x^q K_A(x, x) dx
};
CqQuadrature cq_quadrature_routes(double q);
double cq_quadrature(double q);

/// E(T_N) = E sum_i (lambda_i - 2)_+^q for GUE(N) in the semicircle scaling,
/// computed as (2/N)^{q/2} int_{sqrt(2N)}^inf (y - sqrt(2N))^q S_N(y, y) dy.
double gue_expected_tailsum(int N, double q, double tol = 1e-10);

/// N-free part of the Wishart tail-sum limit:
/// E sum (lambda_i - lambda(c_N))_+^q ~ prefactor * N^{-2q/3} * integral.
struct WishartLimit {
  double integral;   // int_s^inf (x - s)^q K_1(x, x) dx
  double prefactor;  // tau(gamma)^q
};
WishartLimit wishart_limit_tailsum(double gamma, double q, double s, double tol = 1e-10);

/// Parts of the limiting expected number of real Wishart eigenvalues above the edge.
struct WishartConstant {
  double airy_part;      // int_0^inf K_A(x, x) dx
  double boundary_part;  // int_0^inf Ai(x) (1 - int_x^inf Ai) / 2 dx
  double total;          // int_0^inf K_1(x, x) dx, computed directly
};
WishartConstant wishart_c0(double tol = 1e-12);

/// (n lambda(c_N) - mu_N) / sigma_N for a Wishart scaling.
double delta_N(double c_N, const EdgeScaling& scaling);

}  // namespace rmtedge::tailsums
