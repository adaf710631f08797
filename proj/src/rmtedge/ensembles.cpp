#include "rmtedge/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rmtedge/errors.hpp"
#include "rmtedge/parallel.hpp"

namespace rmtedge::ensembles {

namespace {

constexpr int kMaxQlIterations = 50;
constexpr int kMaxGueN = 10000;
constexpr int kMaxWishartn = 100000;
constexpr std::int64_t kMinSamples = 2;
constexpr std::int64_t kMinEstimatorSamples = 100;

void check_tridiagonal(const TridiagonalMatrix& t) {
  if (t.diagonal.empty()) throw ArgumentError("tridiagonal: empty matrix");
  if (t.offdiagonal.size() + 1 != t.diagonal.size()) {
    throw ArgumentError("tridiagonal: off-diagonal must have N - 1 entries");
  }
  for (double v : t.diagonal)
    if (!std::isfinite(v)) throw DomainError("tridiagonal: non-finite entry");
  for (double v : t.offdiagonal)
    if (!std::isfinite(v)) throw DomainError("tridiagonal: non-finite entry");
}

// Gershgorin enclosure.
std::pair<double, double> spectrum_bounds(const TridiagonalMatrix& t) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.offdiagonal[i - 1]);
    if (i + 1 < n) r += std::abs(t.offdiagonal[i]);
    lo = std::min(lo, t.diagonal[i] - r);
    hi = std::max(hi, t.diagonal[i] + r);
  }
  const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return {lo - pad, hi + pad};
}

// k-th largest eigenvalue (k = 1 is the maximum) within [lo, hi].
double bisect_kth_largest(const TridiagonalMatrix& t, int k, double lo, double hi) {
  const int n = static_cast<int>(t.size());
  const int below_target = n - k;  // #eigs below lambda_k when lambda_k is simple
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-15 * std::max(std::abs(lo), std::abs(hi))) break;
    if (count_below(t, mid) <= below_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Neumaier accumulation of (x - center)^2 in a fixed order.
double sum_squared_deviations(const std::vector<double>& v, double center) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double term = (x - center) * (x - center);
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double plain_compensated_sum(const std::vector<double>& v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

TridiagonalMatrix sample_tridiagonal(const EnsembleSpec& spec, random::Stream& rng) {
  return spec.kind == EnsembleSpec::Kind::GUE ? gue_tridiagonal(spec.N, rng)
                                              : wishart_tridiagonal(spec.N, spec.n, rng);
}

}  // namespace

EnsembleSpec EnsembleSpec::gue(int N) {
  if (N <= 0 || N > kMaxGueN) throw ArgumentError("EnsembleSpec: GUE needs 1 <= N <= 10000");
  return {Kind::GUE, N, 0};
}

EnsembleSpec EnsembleSpec::wishart(int N, int n) {
  if (N <= 0 || n <= 0) throw ArgumentError("EnsembleSpec: N and n must be positive");
  if (N > n) throw ArgumentError("EnsembleSpec: Wishart needs N <= n");
  if (n > kMaxWishartn) throw ArgumentError("EnsembleSpec: n must be <= 100000");
  return {Kind::Wishart, N, n};
}

double EnsembleSpec::gamma_N() const {
  if (kind != Kind::Wishart) throw ArgumentError("EnsembleSpec: gamma_N is defined for Wishart only");
  return static_cast<double>(N) / n;
}

std::vector<double> tridiag_eigenvalues(TridiagonalMatrix t) {
  check_tridiagonal(t);
  const int n = static_cast<int>(t.size());
  std::vector<double>& d = t.diagonal;
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::copy(t.offdiagonal.begin(), t.offdiagonal.end(), e.begin());

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-14 * dd || std::abs(e[m]) < std::numeric_limits<double>::min()) break;
      }
      if (m != l) {
        if (++iter > kMaxQlIterations) {
          throw NumericalError("tridiag_eigenvalues: QL did not converge in 50 iterations");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

int count_below(const TridiagonalMatrix& t, double x) {
  const std::size_t n = t.size();
  int count = 0;
  double pivot = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double b2 = i > 0 ? t.offdiagonal[i - 1] * t.offdiagonal[i - 1] : 0.0;
    pivot = (t.diagonal[i] - x) - (i > 0 ? b2 / pivot : 0.0);
    if (pivot == 0.0) pivot = -std::numeric_limits<double>::epsilon() * (std::abs(x) + 1.0);
    if (pivot < 0.0) ++count;
  }
  return count;
}

std::vector<double> eigenvalues_above(const TridiagonalMatrix& t, double x) {
  check_tridiagonal(t);
  const int n = static_cast<int>(t.size());
  const int above = n - count_below(t, x);
  // count_below counts strictly below; eigenvalues equal to x are not "above".
  std::vector<double> out;
  if (above <= 0) return out;
  const auto [lo, hi] = spectrum_bounds(t);
  out.reserve(static_cast<std::size_t>(above));
  for (int k = 1; k <= above; ++k) {
    const double v = bisect_kth_largest(t, k, std::max(lo, x), hi);
    if (v > x) out.push_back(v);
  }
  return out;
}

double largest_eigenvalue(const TridiagonalMatrix& t) {
  check_tridiagonal(t);
  const auto [lo, hi] = spectrum_bounds(t);
  return bisect_kth_largest(t, 1, lo, hi);
}

TridiagonalMatrix gue_tridiagonal(int N, random::Stream& rng) {
  if (N <= 0) throw ArgumentError("gue_tridiagonal: N must be positive");
  // H = (1/sqrt 2) tridiag(N(0,2), chi_{2(N-1)}, ..., chi_2) has weight exp(-x^2/2);
  // y = x / sqrt 2 has weight exp(-y^2).
  TridiagonalMatrix t;
  t.diagonal.resize(static_cast<std::size_t>(N));
  t.offdiagonal.resize(static_cast<std::size_t>(N - 1));
  for (int i = 0; i < N; ++i) t.diagonal[static_cast<std::size_t>(i)] = std::sqrt(0.5) * rng.normal();
  for (int i = 0; i < N - 1; ++i) {
    t.offdiagonal[static_cast<std::size_t>(i)] = 0.5 * rng.chi(2.0 * (N - 1 - i));
  }
  return t;
}

TridiagonalMatrix wishart_tridiagonal(int N, int n, random::Stream& rng) {
  if (N <= 0 || n <= 0) throw ArgumentError("wishart_tridiagonal: N and n must be positive");
  if (N > n) throw ArgumentError("wishart_tridiagonal: needs N <= n");
  // Lower bidiagonal B: diagonal chi_n, chi_{n-1}, ..., chi_{n-N+1};
  // subdiagonal chi_{N-1}, ..., chi_1. B B^T is tridiagonal.
  const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> alpha(static_cast<std::size_t>(N)), beta(static_cast<std::size_t>(N > 1 ? N - 1 : 0));
  for (int i = 0; i < N; ++i) alpha[static_cast<std::size_t>(i)] = inv_root_n * rng.chi(n - i);
  for (int i = 0; i < N - 1; ++i) beta[static_cast<std::size_t>(i)] = inv_root_n * rng.chi(N - 1 - i);
  TridiagonalMatrix t;
  t.diagonal.resize(static_cast<std::size_t>(N));
  t.offdiagonal.resize(static_cast<std::size_t>(N - 1));
  for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i) {
    t.diagonal[i] = alpha[i] * alpha[i] + (i > 0 ? beta[i - 1] * beta[i - 1] : 0.0);
    if (i + 1 < static_cast<std::size_t>(N)) t.offdiagonal[i] = beta[i] * alpha[i];
  }
  return t;
}

std::vector<double> sample_gue_eigenvalues(int N, random::Stream& rng) {
  return tridiag_eigenvalues(gue_tridiagonal(N, rng));
}

std::vector<double> sample_wishart_eigenvalues(int N, int n, random::Stream& rng) {
  return tridiag_eigenvalues(wishart_tridiagonal(N, n, rng));
}

double gue_to_semicircle(double y, int N) { return std::sqrt(2.0 / N) * y; }

BulkInterval bulk_interval(const EnsembleSpec& spec) {
  if (spec.kind == EnsembleSpec::Kind::GUE) {
    const double edge = std::sqrt(2.0 * spec.N);
    return {-edge, edge};
  }
  const double r = std::sqrt(spec.gamma_N());
  return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)};
}

MonteCarloEstimate monte_carlo(std::int64_t samples, std::uint64_t seed, int workers,
                               const std::function<double(random::Stream&)>& statistic) {
  if (samples < kMinSamples) throw ArgumentError("monte_carlo: need at least 2 samples");
  std::vector<double> values(static_cast<std::size_t>(samples));
  detail::parallel_for(samples, workers, [&](std::int64_t i) {
    random::Stream rng(seed, static_cast<std::uint64_t>(i));
    values[static_cast<std::size_t>(i)] = statistic(rng);
  });
  MonteCarloEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.mean = plain_compensated_sum(values) / static_cast<double>(samples);
  const double ss = sum_squared_deviations(values, est.mean);
  est.std_error = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
  return est;
}

MonteCarloEstimate mc_expected_tailsum(const EnsembleSpec& spec, double q, double window_start,
                                       std::int64_t samples, std::uint64_t seed, int workers) {
  if (!std::isfinite(q) || q < 0.0) throw DomainError("mc_expected_tailsum: q must be >= 0");
  if (std::isnan(window_start)) throw DomainError("mc_expected_tailsum: window is NaN");
  if (samples < kMinEstimatorSamples) throw ArgumentError("mc_expected_tailsum: need at least 100 samples");
  return monte_carlo(samples, seed, workers, [&](random::Stream& rng) {
    const TridiagonalMatrix t = sample_tridiagonal(spec, rng);
    if (q == 0.0) return static_cast<double>(static_cast<int>(t.size()) - count_below(t, window_start));
    double s = 0.0;
    for (double l : eigenvalues_above(t, window_start)) s += std::pow(l - window_start, q);
    return s;
  });
}

MonteCarloEstimate mc_both_edges_inside(const EnsembleSpec& spec, std::int64_t samples,
                                        std::uint64_t seed, int workers) {
  if (samples < kMinEstimatorSamples) throw ArgumentError("mc_both_edges_inside: need at least 100 samples");
  const BulkInterval bulk = bulk_interval(spec);
  return monte_carlo(samples, seed, workers, [&](random::Stream& rng) {
    const TridiagonalMatrix t = sample_tridiagonal(spec, rng);
    const int n = static_cast<int>(t.size());
    const bool inside = count_below(t, bulk.lower) == 0 && count_below(t, bulk.upper) == n;
    return inside ? 1.0 : 0.0;
  });
}

std::vector<double> sample_largest(const EnsembleSpec& spec, std::int64_t samples,
                                   std::uint64_t seed, int workers) {
  if (samples < 1) throw ArgumentError("sample_largest: need at least one sample");
  std::vector<double> out(static_cast<std::size_t>(samples));
  detail::parallel_for(samples, workers, [&](std::int64_t i) {
    random::Stream rng(seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = largest_eigenvalue(sample_tridiagonal(spec, rng));
  });
  return out;
}

}  // namespace rmtedge::ensembles
