#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace rmtedge::kernels {

/// A symmetric scalar kernel K(x, y) with an explicit diagonal.
///
/// length_scale is the distance over which the kernel decays past the edge;
/// the Nystrom discretization uses it to place nodes. Kernels may supply a
/// batch Gram builder when pairwise evaluation would repeat expensive work.
class KernelFn {
 public:
  using Eval = std::function<double(double, double)>;
  using Diag = std::function<double(double)>;
  /// Returns the row-major matrix K(x_i, x_j) over the given nodes.
  using Gram = std::function<std::vector<double>(std::span<const double>)>;

  KernelFn(std::string label, Eval eval, Diag diag, double length_scale = 1.0, Gram gram = {});

  double eval(double x, double y) const { return eval_(x, y); }
  double eval_diag(double x) const { return diag_(x); }
  const std::string& label() const { return label_; }
  double length_scale() const { return length_scale_; }

  std::vector<double> gram(std::span<const double> nodes) const;

 private:
  std::string label_;
  Eval eval_;
  Diag diag_;
  double length_scale_;
  Gram gram_;
};

/// Below this separation the Christoffel-Darboux quotients switch to a
/// cancellation-free evaluation.
inline constexpr double kConfluentThreshold = 1e-6;

/// Finite-N GUE kernel S_N(x, y) = sum_{k<N} phi_k(x) phi_k(y) in the scaling
/// with joint density exp(-sum y_i^2) |Delta(y)|^2.
KernelFn gue_cd_kernel(int n);

/// S_N(y, y) by direct summation of phi_k(y)^2.
double gue_cd_diag(int n, double y);
/// sum_{k<N} phi_k(x) phi_k(y) by direct summation.
double gue_cd_direct(int n, double x, double y);
/// The two-term Christoffel-Darboux quotient; requires x != y.
double gue_cd_quotient(int n, double x, double y);

/// Airy kernel K_A(x, y) = (Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y).
KernelFn airy_kernel();

/// K_A(x, x) = int_0^inf Ai(x + z)^2 dz by quadrature; x >= -10.
double airy_kernel_diag(double x);
/// The same diagonal via Ai'(x)^2 - x Ai(x)^2.
double airy_kernel_diag_closed(double x);

/// Limiting one-point density of real Wishart eigenvalues at the soft edge:
/// K_A(x, x) + Ai(x) (1 - int_x^inf Ai) / 2; x >= -10.
double wishart_limit_diag(double x);

}  // namespace rmtedge::kernels
