#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rmtedge/random.hpp"

namespace rmtedge::ensembles {

/// Which ensemble, its size, and for Wishart the sample count.
struct EnsembleSpec {
  enum class Kind { GUE, Wishart };
  Kind kind = Kind::GUE;
  int N = 0;
  int n = 0;

  static EnsembleSpec gue(int N);
  static EnsembleSpec wishart(int N, int n);
  double gamma_N() const;  // N / n, Wishart only
};

struct TridiagonalMatrix {
  std::vector<double> diagonal;
  std::vector<double> offdiagonal;  // size N - 1

  std::size_t size() const { return diagonal.size(); }
};

/// All eigenvalues, descending, by implicit-shift QL.
std::vector<double> tridiag_eigenvalues(TridiagonalMatrix t);

/// Number of eigenvalues strictly below x (Sturm count from the LDL^T pivots).
int count_below(const TridiagonalMatrix& t, double x);
/// Eigenvalues strictly above x, descending, by bisection on the Sturm count.
std::vector<double> eigenvalues_above(const TridiagonalMatrix& t, double x);
/// Largest eigenvalue by bisection.
double largest_eigenvalue(const TridiagonalMatrix& t);

/// Tridiagonal beta = 2 Hermite model whose eigenvalues have joint density
/// proportional to exp(-sum y_i^2) Delta(y)^2 (bulk edge sqrt(2N)).
TridiagonalMatrix gue_tridiagonal(int N, random::Stream& rng);
/// B B^T / n for the beta = 1 bidiagonal Laguerre model; eigenvalues are those
/// of X X^T / n with X an N x n standard Gaussian matrix.
TridiagonalMatrix wishart_tridiagonal(int N, int n, random::Stream& rng);

std::vector<double> sample_gue_eigenvalues(int N, random::Stream& rng);
std::vector<double> sample_wishart_eigenvalues(int N, int n, random::Stream& rng);

/// lambda = sqrt(2/N) y: the semicircle scaling with upper edge 2.
double gue_to_semicircle(double y, int N);

/// Default bulk edges: GUE +-sqrt(2N); Wishart [(1 - sqrt g)^2, (1 + sqrt g)^2], g = N/n.
struct BulkInterval {
  double lower;
  double upper;
};
BulkInterval bulk_interval(const EnsembleSpec& spec);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(samples)
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Runs `samples` independent draws of statistic(stream for sample i) and
/// aggregates them. The result is bit-identical for every worker count.
MonteCarloEstimate monte_carlo(std::int64_t samples, std::uint64_t seed, int workers,
                               const std::function<double(random::Stream&)>& statistic);

/// E sum_i (lambda_i - window)_+^q; q = 0 counts eigenvalues strictly above the window.
/// Eigenvalues are in the ensemble's native scaling (GUE: y, Wishart: lambda of X X^T / n).
MonteCarloEstimate mc_expected_tailsum(const EnsembleSpec& spec, double q, double window_start,
                                       std::int64_t samples, std::uint64_t seed, int workers = 1);

/// Fraction of draws with every eigenvalue inside bulk_interval(spec).
MonteCarloEstimate mc_both_edges_inside(const EnsembleSpec& spec, std::int64_t samples,
                                        std::uint64_t seed, int workers = 1);

/// Per-draw largest eigenvalues, in sample order.
std::vector<double> sample_largest(const EnsembleSpec& spec, std::int64_t samples,
                                   std::uint64_t seed, int workers = 1);

}  // namespace rmtedge::ensembles
