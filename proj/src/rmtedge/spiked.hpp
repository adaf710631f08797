#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rmtedge/random.hpp"

namespace rmtedge::spiked {

/// Population covariance diag(l_1, ..., l_r, 1, ..., 1) in dimension p, n samples.
struct SpikedModel {
  int p = 0;
  int n = 0;
  std::vector<double> spikes;  // descending, all > 1

  static SpikedModel make(int p, int n, std::vector<double> spikes);
  int rank() const { return static_cast<int>(spikes.size()); }
  /// c_p = p / n.
  double c_p() const { return static_cast<double>(p) / n; }
};

struct SpikedSample {
  std::vector<double> check_eigs;  // p eigenvalues of the sample covariance, descending
  std::vector<double> noise_eigs;  // p - r eigenvalues of its noise-coordinate compression
};

/// One Gaussian sample; noise_eigs come from the same data projected on the
/// unit-variance coordinates, so Cauchy interlacing holds draw by draw.
SpikedSample sample_spiked_eigs(const SpikedModel& model, random::Stream& rng);

/// Eigenvalues of W_{p-r}(n, I) / n from the bidiagonal model; equal in law to
/// SpikedSample::noise_eigs at a fraction of the cost.
std::vector<double> sample_noise_eigs(const SpikedModel& model, random::Stream& rng);

/// Number of j in [r+1, p] with check_eigs[j] > noise_eigs[j - r] + slack.
int interlacing_violations(const SpikedSample& sample, int rank, double slack = 1e-10);

/// Shrinkage rule eta(lambda, c), equal to 1 for lambda <= (1 + sqrt c)^2.
struct BulkShrinker {
  std::string label;
  std::function<double(double, double)> eta;
  double growth_bound = 1.0;  // eta(lambda, c) <= growth_bound * lambda above the edge
  bool continuous = true;

  double operator()(double lambda, double c) const { return eta(lambda, c); }
};

/// max(1, 1 + lambda - (1 + sqrt c)^2): continuous, slope one past the edge.
BulkShrinker linear_bulk_shrinker();
/// eta_star below; discontinuous at the edge.
BulkShrinker precision_operator_shrinker();

/// Population spike l whose limiting sample eigenvalue l (1 + c / (l - 1)) equals lambda;
/// requires lambda > (1 + sqrt c)^2.
double spike_from_eigenvalue(double lambda, double c);

/// Optimal shrinker for operator-norm loss on the precision matrix: the
/// recovered spike l(lambda) above the bulk edge, 1 at or below it, so the
/// right limit at the edge is 1 + sqrt(c).
double eta_star(double lambda, double c);

/// sum_i [eta(lambda_i, c_p) - 1]^q over the noise eigenvalues; q > 0.
double shrinker_gap(std::span<const double> noise_eigs, const BulkShrinker& eta, double c_p, double q);

/// #{i : lambda_i > (1 + sqrt c)^2}.
int exit_count(std::span<const double> eigs, double c);

/// [c (l - 1) / (l (l - 1 + gamma))]^{1/2}
double f_of_ell(double ell, double c, double gamma);

/// Difference of operator-norm precision losses between the full shrinkage
/// estimator and its rank-aware variant for one Gaussian sample.
double precision_loss_gap(const SpikedModel& model, const BulkShrinker& eta, random::Stream& rng);

struct SpikedRunConfig {
  std::vector<int> p_list;
  double gamma = 0.5;              // n = round(p / gamma)
  std::vector<double> spikes;
  BulkShrinker shrinker = linear_bulk_shrinker();
  double q = 0.5;
  std::int64_t samples = 2000;
  std::uint64_t seed = 1;
  bool dense = true;               // false: noise eigenvalues from the bidiagonal model
  int workers = 1;
};

struct SpikedRow {
  int p = 0;
  int n = 0;
  int rank = 0;
  std::int64_t samples = 0;
  double mean_gap = 0.0;
  double gap_std_error = 0.0;
  double mean_exits = 0.0;
  double exits_std_error = 0.0;
  std::array<std::int64_t, 4> exit_histogram{};  // 0, 1, 2, >= 3 noise exits
  std::int64_t interlacing_checked = 0;
  std::int64_t interlacing_violations = 0;
};

std::vector<SpikedRow> run_spiked(const SpikedRunConfig& config);

/// precision_loss_gap over `samples` independent draws, in sample order.
std::vector<double> precision_loss_gaps(const SpikedModel& model, const BulkShrinker& eta,
                                        std::int64_t samples, std::uint64_t seed, int workers = 1);

}  // namespace rmtedge::spiked
