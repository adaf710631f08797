#include "rmtedge/spiked.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rmtedge/ensembles.hpp"
#include "rmtedge/errors.hpp"
#include "rmtedge/parallel.hpp"
#include "rmtedge/tailsums.hpp"

namespace rmtedge::spiked {

namespace {

constexpr int kMaxP = 500;
constexpr int kMaxN = 2000;

std::vector<double> descending(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Gaussian data matrix with row i scaled by sqrt(l_i).
Eigen::MatrixXd sample_data(const SpikedModel& model, random::Stream& rng) {
  Eigen::MatrixXd x(model.p, model.n);
  for (int j = 0; j < model.n; ++j)
    for (int i = 0; i < model.p; ++i) x(i, j) = rng.normal();
  for (int i = 0; i < model.rank(); ++i) x.row(i) *= std::sqrt(model.spikes[static_cast<std::size_t>(i)]);
  return x;
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(x.rows(), x.rows());
  s.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / static_cast<double>(x.cols()));
  return s.selfadjointView<Eigen::Lower>();
}

double operator_norm(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct Moments {
  double mean;
  double std_error;
};

Moments moments(const std::vector<double>& v) {
  const double count = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / count;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, v.size() > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0};
}

}  // namespace

SpikedModel SpikedModel::make(int p, int n, std::vector<double> spikes) {
  if (p <= 0 || n <= 0 || p > kMaxP || n > kMaxN) {
    throw ArgumentError("SpikedModel: need 1 <= p <= 500 and 1 <= n <= 2000");
  }
  if (static_cast<int>(spikes.size()) >= p) throw ArgumentError("SpikedModel: rank must be below p");
  for (double l : spikes)
    if (!(l > 1.0) || !std::isfinite(l)) throw DomainError("SpikedModel: spikes must exceed 1");
  if (!std::is_sorted(spikes.begin(), spikes.end(), std::greater<>())) {
    throw ArgumentError("SpikedModel: spikes must be in descending order");
  }
  return {p, n, std::move(spikes)};
}

SpikedSample sample_spiked_eigs(const SpikedModel& model, random::Stream& rng) {
  const Eigen::MatrixXd s = sample_covariance(sample_data(model, rng));
  const int r = model.rank();
  const int m = model.p - r;
  SpikedSample out;
  out.check_eigs = descending(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s, Eigen::EigenvaluesOnly).eigenvalues());
  if (r == 0) {
    out.noise_eigs = out.check_eigs;
  } else {
    const Eigen::MatrixXd noise = s.bottomRightCorner(m, m);
    out.noise_eigs =
        descending(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(noise, Eigen::EigenvaluesOnly).eigenvalues());
  }
  return out;
}

std::vector<double> sample_noise_eigs(const SpikedModel& model, random::Stream& rng) {
  return ensembles::sample_wishart_eigenvalues(model.p - model.rank(), model.n, rng);
}

int interlacing_violations(const SpikedSample& sample, int rank, double slack) {
  int violations = 0;
  const std::size_t p = sample.check_eigs.size();
  for (std::size_t j = static_cast<std::size_t>(rank); j < p; ++j) {
    if (sample.check_eigs[j] > sample.noise_eigs[j - static_cast<std::size_t>(rank)] + slack) ++violations;
  }
  return violations;
}

BulkShrinker linear_bulk_shrinker() {
  return {"linear",
          [](double lambda, double c) { return std::max(1.0, 1.0 + lambda - tailsums::bulk_edge(c)); },
          1.0, true};
}

BulkShrinker precision_operator_shrinker() { return {"eta_star", eta_star, 2.0, false}; }

double spike_from_eigenvalue(double lambda, double c) {
  const double edge = tailsums::bulk_edge(c);
  if (!(lambda > edge)) throw DomainError("spike_from_eigenvalue: lambda must exceed the bulk edge");
  const double b = lambda + 1.0 - c;
  return 0.5 * (b + std::sqrt(std::max(0.0, b * b - 4.0 * lambda)));
}

double eta_star(double lambda, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("eta_star: c must lie in (0, 1]");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("eta_star: lambda must be >= 0");
  if (lambda <= tailsums::bulk_edge(c)) return 1.0;
  return spike_from_eigenvalue(lambda, c);
}

double shrinker_gap(std::span<const double> noise_eigs, const BulkShrinker& eta, double c_p, double q) {
  if (!(q > 0.0)) throw DomainError("shrinker_gap: q must be positive");
  double s = 0.0;
  for (double l : noise_eigs) {
    const double excess = eta(l, c_p) - 1.0;
    if (excess > 0.0) s += std::pow(excess, q);
  }
  return s;
}

int exit_count(std::span<const double> eigs, double c) {
  const double edge = tailsums::bulk_edge(c);
  return static_cast<int>(std::count_if(eigs.begin(), eigs.end(), [edge](double l) { return l > edge; }));
}

double f_of_ell(double ell, double c, double gamma) {
  if (!(ell >= 1.0) || !std::isfinite(ell)) throw DomainError("f_of_ell: ell must be >= 1");
  if (!(c > 0.0) || !(gamma > 0.0)) throw DomainError("f_of_ell: c and gamma must be positive");
  return std::sqrt(c * (ell - 1.0) / (ell * (ell - 1.0 + gamma)));
}

double precision_loss_gap(const SpikedModel& model, const BulkShrinker& eta, random::Stream& rng) {
  const Eigen::MatrixXd s = sample_covariance(sample_data(model, rng));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  const int p = model.p, r = model.rank();
  const double c = model.c_p();
  // Eigen returns ascending order; index p - 1 - j is the j-th largest.
  Eigen::VectorXd inv_full(p), inv_aware(p);
  for (int j = 0; j < p; ++j) {
    const int idx = p - 1 - j;
    const double shrunk = eta(es.eigenvalues()(idx), c);
    inv_full(idx) = 1.0 / shrunk;
    inv_aware(idx) = j < r ? 1.0 / shrunk : 1.0;
  }
  const Eigen::MatrixXd& v = es.eigenvectors();
  Eigen::VectorXd pop_inv = Eigen::VectorXd::Ones(p);
  for (int i = 0; i < r; ++i) pop_inv(i) = 1.0 / model.spikes[static_cast<std::size_t>(i)];
  const Eigen::MatrixXd full = v * inv_full.asDiagonal() * v.transpose();
  const Eigen::MatrixXd aware = v * inv_aware.asDiagonal() * v.transpose();
  Eigen::MatrixXd diff_full = full, diff_aware = aware;
  diff_full.diagonal() -= pop_inv;
  diff_aware.diagonal() -= pop_inv;
  return operator_norm(diff_full) - operator_norm(diff_aware);
}

std::vector<SpikedRow> run_spiked(const SpikedRunConfig& config) {
  if (!(config.gamma > 0.0 && config.gamma <= 1.0)) throw DomainError("run_spiked: gamma must lie in (0, 1]");
  if (config.samples < 2) throw ArgumentError("run_spiked: need at least 2 samples");
  std::vector<SpikedRow> rows;
  for (int p : config.p_list) {
    const int n = static_cast<int>(std::lround(p / config.gamma));
    const SpikedModel model = SpikedModel::make(p, n, config.spikes);
    const double c = model.c_p();
    const auto count = static_cast<std::size_t>(config.samples);
    std::vector<double> gaps(count), exits(count);
    std::vector<int> violations(count, 0);
    detail::parallel_for(config.samples, config.workers, [&](std::int64_t i) {
      // Streams are keyed by (seed, p, sample) so each dimension is reproducible on its own.
      random::Stream rng(config.seed, (static_cast<std::uint64_t>(p) << 40) | static_cast<std::uint64_t>(i));
      std::vector<double> noise;
      if (config.dense) {
        SpikedSample s = sample_spiked_eigs(model, rng);
        violations[static_cast<std::size_t>(i)] = interlacing_violations(s, model.rank());
        noise = std::move(s.noise_eigs);
      } else {
        // Only eigenvalues past the edge contribute to either statistic.
        const auto t = ensembles::wishart_tridiagonal(model.p - model.rank(), model.n, rng);
        noise = ensembles::eigenvalues_above(t, tailsums::bulk_edge(c));
      }
      gaps[static_cast<std::size_t>(i)] = shrinker_gap(noise, config.shrinker, c, config.q);
      exits[static_cast<std::size_t>(i)] = exit_count(noise, c);
    });
    SpikedRow row;
    row.p = p;
    row.n = n;
    row.rank = model.rank();
    row.samples = config.samples;
    const Moments g = moments(gaps), e = moments(exits);
    row.mean_gap = g.mean;
    row.gap_std_error = g.std_error;
    row.mean_exits = e.mean;
    row.exits_std_error = e.std_error;
    for (double x : exits) ++row.exit_histogram[static_cast<std::size_t>(std::min(3, static_cast<int>(x)))];
    if (config.dense) {
      row.interlacing_checked = config.samples;
      for (int v : violations) row.interlacing_violations += v;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> precision_loss_gaps(const SpikedModel& model, const BulkShrinker& eta,
                                        std::int64_t samples, std::uint64_t seed, int workers) {
  if (samples < 1) throw ArgumentError("precision_loss_gaps: need at least one sample");
  std::vector<double> out(static_cast<std::size_t>(samples));
  detail::parallel_for(samples, workers, [&](std::int64_t i) {
    random::Stream rng(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = precision_loss_gap(model, eta, rng);
  });
  return out;
}

}  // namespace rmtedge::spiked
