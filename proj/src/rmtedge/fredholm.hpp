#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rmtedge/kernels.hpp"

namespace rmtedge::fredholm {

/// Dense symmetric matrix, row-major, full storage.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0.0) {}
  SymmetricMatrix(std::size_t n, std::vector<double> data);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double trace() const;
  double frobenius_squared() const;
  /// max |a_ij - a_ji|
  double asymmetry() const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

struct SymmetricSpectrum {
  std::vector<double> eigenvalues;  // descending
};

/// M_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j) on an m-point rule for (a, inf),
/// with nodes spread over the kernel's length scale.
SymmetricMatrix nystrom_discretize(const kernels::KernelFn& kernel, double a, int m);

/// All eigenvalues by cyclic Jacobi rotations.
SymmetricSpectrum symmetric_eigenvalues(SymmetricMatrix matrix);

inline constexpr int kDefaultKMax = 5;
inline constexpr double kDefaultCountTol = 1e-11;

/// P(exactly k points in (a, inf)), k = 0..k_max, for a determinantal process.
struct CountDistribution {
  std::vector<double> probs;
  double window_start = 0.0;
  int grid_size = 0;             // Nystrom nodes at acceptance
  double error_estimate = 0.0;   // max_k |p_m(k) - p_{m/2}(k)|
  bool clamped = false;          // an eigenvalue in [1 - 1e-12, 1) was clamped

  double mean() const;   // sum k p(k)
  double total() const;  // sum p(k)
};

/// p(k) from operator eigenvalues: prod(1 - l_i) * e_k(l_i / (1 - l_i)).
CountDistribution counting_from_spectrum(std::span<const double> eigenvalues, int k_max);

/// Doubles the Nystrom grid from 32 until all p(k) agree to tol.
CountDistribution counting_distribution(const kernels::KernelFn& kernel, double a,
                                        int k_max = kDefaultKMax, double tol = kDefaultCountTol);

}  // namespace rmtedge::fredholm
