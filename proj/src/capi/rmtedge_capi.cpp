#include "rmtedge/rmtedge.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "rmtedge/ensembles.hpp"
#include "rmtedge/errors.hpp"
#include "rmtedge/fredholm.hpp"
#include "rmtedge/kernels.hpp"
#include "rmtedge/specfun.hpp"
#include "rmtedge/spiked.hpp"
#include "rmtedge/tailsums.hpp"

struct rmte_kernel {
  rmtedge::kernels::KernelFn fn;
};

struct rmte_count_dist {
  rmtedge::fredholm::CountDistribution dist;
};

struct rmte_spiked_result {
  std::vector<rmtedge::spiked::SpikedRow> rows;
};

namespace {

thread_local std::string g_last_error;

rmte_status fail(rmte_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs body, translating core exceptions into status codes.
template <class F>
rmte_status guarded(F&& body) {
  try {
    std::forward<F>(body)();
    g_last_error.clear();
    return RMTE_OK;
  } catch (const rmtedge::ConvergenceError& e) {
    return fail(RMTE_ERR_CONVERGENCE, e.what());
  } catch (const rmtedge::NumericalError& e) {
    return fail(RMTE_ERR_NUMERICAL, e.what());
  } catch (const rmtedge::DomainError& e) {
    return fail(RMTE_ERR_DOMAIN, e.what());
  } catch (const rmtedge::ArgumentError& e) {
    return fail(RMTE_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RMTE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RMTE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RMTE_ERR_INTERNAL, "unknown error");
  }
}

#define RMTE_REQUIRE(ptr)                                               \
  do {                                                                  \
    if ((ptr) == nullptr) return fail(RMTE_ERR_NULL, #ptr " is NULL"); \
  } while (0)

rmtedge::ensembles::EnsembleSpec to_spec(const rmte_ensemble& e) {
  switch (e.kind) {
    case RMTE_GUE:
      return rmtedge::ensembles::EnsembleSpec::gue(e.N);
    case RMTE_WISHART:
      return rmtedge::ensembles::EnsembleSpec::wishart(e.N, e.n);
  }
  throw rmtedge::ArgumentError("unknown ensemble kind");
}

rmte_mc_estimate to_c(const rmtedge::ensembles::MonteCarloEstimate& m) {
  return {m.mean, m.std_error, m.samples, m.seed};
}

rmte_edge_scaling to_c(const rmtedge::tailsums::EdgeScaling& s) {
  return {s.ensemble == rmtedge::tailsums::EdgeScaling::Ensemble::GUE ? RMTE_GUE : RMTE_WISHART,
          s.N, s.n, s.mu, s.scale, s.gamma_N};
}

rmtedge::spiked::BulkShrinker to_shrinker(rmte_shrinker s) {
  switch (s) {
    case RMTE_SHRINK_LINEAR:
      return rmtedge::spiked::linear_bulk_shrinker();
    case RMTE_SHRINK_ETA_STAR:
      return rmtedge::spiked::precision_operator_shrinker();
  }
  throw rmtedge::ArgumentError("unknown shrinker");
}

}  // namespace

extern "C" {

const char* rmte_version(void) { return "0.1.0"; }

const char* rmte_status_name(rmte_status status) {
  switch (status) {
    case RMTE_OK: return "ok";
    case RMTE_ERR_ARGUMENT: return "argument";
    case RMTE_ERR_DOMAIN: return "domain";
    case RMTE_ERR_CONVERGENCE: return "convergence";
    case RMTE_ERR_NUMERICAL: return "numerical";
    case RMTE_ERR_NULL: return "null";
    case RMTE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rmte_last_error(void) { return g_last_error.c_str(); }

rmte_status rmte_airy_ai(double x, double* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = rmtedge::specfun::airy_ai(x); });
}

rmte_status rmte_airy_ai_prime(double x, double* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = rmtedge::specfun::airy_ai_prime(x); });
}

rmte_status rmte_airy_tail(double x, double* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = rmtedge::specfun::airy_tail(x); });
}

rmte_status rmte_gamma(double x, double* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = rmtedge::specfun::gamma_fn(x); });
}

rmte_status rmte_hermite_phi(double y, int k, double* mantissa, int* exponent) {
  RMTE_REQUIRE(mantissa);
  RMTE_REQUIRE(exponent);
  return guarded([&] {
    const auto all = rmtedge::specfun::hermite_phi_all(y, k);
    *mantissa = all.back().mantissa;
    *exponent = all.back().exponent;
  });
}

rmte_status rmte_kernel_create_gue(int N, rmte_kernel** out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = new rmte_kernel{rmtedge::kernels::gue_cd_kernel(N)}; });
}

rmte_status rmte_kernel_create_airy(rmte_kernel** out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = new rmte_kernel{rmtedge::kernels::airy_kernel()}; });
}

void rmte_kernel_destroy(rmte_kernel* kernel) { delete kernel; }

rmte_status rmte_kernel_eval(const rmte_kernel* kernel, double x, double y, double* out) {
  RMTE_REQUIRE(kernel);
  RMTE_REQUIRE(out);
  return guarded([&] { *out = kernel->fn.eval(x, y); });
}

rmte_status rmte_kernel_eval_diag(const rmte_kernel* kernel, double x, double* out) {
  RMTE_REQUIRE(kernel);
  RMTE_REQUIRE(out);
  return guarded([&] { *out = kernel->fn.eval_diag(x); });
}

rmte_status rmte_wishart_limit_diag(double x, double* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = rmtedge::kernels::wishart_limit_diag(x); });
}

rmte_status rmte_counting_distribution(const rmte_kernel* kernel, double window_start, int k_max,
                                       double tol, rmte_count_dist** out) {
  RMTE_REQUIRE(kernel);
  RMTE_REQUIRE(out);
  return guarded([&] {
    *out = new rmte_count_dist{rmtedge::fredholm::counting_distribution(kernel->fn, window_start, k_max, tol)};
  });
}

void rmte_count_dist_destroy(rmte_count_dist* dist) { delete dist; }

rmte_status rmte_count_dist_k_max(const rmte_count_dist* dist, int* k_max) {
  RMTE_REQUIRE(dist);
  RMTE_REQUIRE(k_max);
  *k_max = static_cast<int>(dist->dist.probs.size()) - 1;
  return RMTE_OK;
}

rmte_status rmte_count_dist_prob(const rmte_count_dist* dist, int k, double* out) {
  RMTE_REQUIRE(dist);
  RMTE_REQUIRE(out);
  if (k < 0 || k >= static_cast<int>(dist->dist.probs.size())) {
    return fail(RMTE_ERR_ARGUMENT, "rmte_count_dist_prob: k out of range");
  }
  *out = dist->dist.probs[static_cast<std::size_t>(k)];
  return RMTE_OK;
}

rmte_status rmte_count_dist_mean(const rmte_count_dist* dist, double* out) {
  RMTE_REQUIRE(dist);
  RMTE_REQUIRE(out);
  *out = dist->dist.mean();
  return RMTE_OK;
}

rmte_status rmte_count_dist_info(const rmte_count_dist* dist, int* grid_size, double* error_estimate,
                                 int* clamped) {
  RMTE_REQUIRE(dist);
  if (grid_size) *grid_size = dist->dist.grid_size;
  if (error_estimate) *error_estimate = dist->dist.error_estimate;
  if (clamped) *clamped = dist->dist.clamped ? 1 : 0;
  return RMTE_OK;
}

rmte_status rmte_cq_closed(double q, double* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = rmtedge::tailsums::cq_closed(q); });
}

rmte_status rmte_cq_quadrature(double q, double* single, double* double_integral) {
  RMTE_REQUIRE(single);
  RMTE_REQUIRE(double_integral);
  return guarded([&] {
    const auto r = rmtedge::tailsums::cq_quadrature_routes(q);
    *single = r.single;
    *double_integral = r.double_integral;
  });
}

rmte_status rmte_gue_expected_tailsum(int N, double q, double tol, double* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = rmtedge::tailsums::gue_expected_tailsum(N, q, tol); });
}

rmte_status rmte_wishart_limit_tailsum(double gamma, double q, double s, double tol, double* integral,
                                       double* prefactor) {
  RMTE_REQUIRE(integral);
  RMTE_REQUIRE(prefactor);
  return guarded([&] {
    const auto r = rmtedge::tailsums::wishart_limit_tailsum(gamma, q, s, tol);
    *integral = r.integral;
    *prefactor = r.prefactor;
  });
}

rmte_status rmte_wishart_c0(double tol, rmte_wishart_constant* out) {
  RMTE_REQUIRE(out);
  return guarded([&] {
    const auto r = rmtedge::tailsums::wishart_c0(tol);
    *out = {r.airy_part, r.boundary_part, r.total};
  });
}

rmte_status rmte_gamma_functions_eval(double gamma, rmte_gamma_functions* out) {
  RMTE_REQUIRE(out);
  return guarded([&] {
    const rmtedge::tailsums::GammaFunctions g(gamma);
    *out = {g.gamma(), g.lambda(), g.lambda_prime(), g.tau(), g.sigma()};
  });
}

rmte_status rmte_edge_scaling_gue(int N, rmte_edge_scaling* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = to_c(rmtedge::tailsums::EdgeScaling::gue(N)); });
}

rmte_status rmte_edge_scaling_wishart(int N, int n, rmte_edge_scaling* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = to_c(rmtedge::tailsums::EdgeScaling::wishart(N, n)); });
}

rmte_status rmte_delta_N(double c_N, const rmte_edge_scaling* scaling, double* out) {
  RMTE_REQUIRE(scaling);
  RMTE_REQUIRE(out);
  if (scaling->ensemble != RMTE_WISHART) return fail(RMTE_ERR_ARGUMENT, "rmte_delta_N: needs a Wishart scaling");
  return guarded([&] { *out = rmtedge::tailsums::delta_N(c_N, rmtedge::tailsums::EdgeScaling::wishart(scaling->N, scaling->n)); });
}

rmte_status rmte_bulk_interval(const rmte_ensemble* ensemble, double* lower, double* upper) {
  RMTE_REQUIRE(ensemble);
  RMTE_REQUIRE(lower);
  RMTE_REQUIRE(upper);
  return guarded([&] {
    const auto b = rmtedge::ensembles::bulk_interval(to_spec(*ensemble));
    *lower = b.lower;
    *upper = b.upper;
  });
}

rmte_status rmte_sample_eigenvalues(const rmte_ensemble* ensemble, uint64_t seed, uint64_t stream, double* out,
                                    size_t capacity) {
  RMTE_REQUIRE(ensemble);
  RMTE_REQUIRE(out);
  return guarded([&] {
    const auto spec = to_spec(*ensemble);
    if (capacity < static_cast<size_t>(spec.N)) throw rmtedge::ArgumentError("rmte_sample_eigenvalues: capacity below N");
    rmtedge::random::Stream rng(seed, stream);
    const auto eigs = spec.kind == rmtedge::ensembles::EnsembleSpec::Kind::GUE
                          ? rmtedge::ensembles::sample_gue_eigenvalues(spec.N, rng)
                          : rmtedge::ensembles::sample_wishart_eigenvalues(spec.N, spec.n, rng);
    std::copy(eigs.begin(), eigs.end(), out);
  });
}

rmte_status rmte_mc_expected_tailsum(const rmte_ensemble* ensemble, double q, double window_start, int64_t samples,
                                     uint64_t seed, int workers, rmte_mc_estimate* out) {
  RMTE_REQUIRE(ensemble);
  RMTE_REQUIRE(out);
  return guarded([&] {
    *out = to_c(rmtedge::ensembles::mc_expected_tailsum(to_spec(*ensemble), q, window_start, samples, seed, workers));
  });
}

rmte_status rmte_mc_both_edges_inside(const rmte_ensemble* ensemble, int64_t samples, uint64_t seed, int workers,
                                      rmte_mc_estimate* out) {
  RMTE_REQUIRE(ensemble);
  RMTE_REQUIRE(out);
  return guarded([&] {
    *out = to_c(rmtedge::ensembles::mc_both_edges_inside(to_spec(*ensemble), samples, seed, workers));
  });
}

rmte_status rmte_spiked_run(const rmte_spiked_config* config, rmte_spiked_result** out) {
  RMTE_REQUIRE(config);
  RMTE_REQUIRE(out);
  if (config->p_count > 0) RMTE_REQUIRE(config->p_list);
  if (config->spike_count > 0) RMTE_REQUIRE(config->spikes);
  return guarded([&] {
    rmtedge::spiked::SpikedRunConfig c;
    c.p_list.assign(config->p_list, config->p_list + config->p_count);
    c.gamma = config->gamma;
    c.spikes.assign(config->spikes, config->spikes + config->spike_count);
    c.shrinker = to_shrinker(config->shrinker);
    c.q = config->q;
    c.samples = config->samples;
    c.seed = config->seed;
    c.dense = config->dense != 0;
    c.workers = config->workers;
    *out = new rmte_spiked_result{rmtedge::spiked::run_spiked(c)};
  });
}

void rmte_spiked_result_destroy(rmte_spiked_result* result) { delete result; }

rmte_status rmte_spiked_result_count(const rmte_spiked_result* result, size_t* count) {
  RMTE_REQUIRE(result);
  RMTE_REQUIRE(count);
  *count = result->rows.size();
  return RMTE_OK;
}

rmte_status rmte_spiked_result_row(const rmte_spiked_result* result, size_t index, rmte_spiked_row* out) {
  RMTE_REQUIRE(result);
  RMTE_REQUIRE(out);
  if (index >= result->rows.size()) return fail(RMTE_ERR_ARGUMENT, "rmte_spiked_result_row: index out of range");
  const auto& r = result->rows[index];
  *out = {};
  out->p = r.p;
  out->n = r.n;
  out->rank = r.rank;
  out->samples = r.samples;
  out->mean_gap = r.mean_gap;
  out->gap_std_error = r.gap_std_error;
  out->mean_exits = r.mean_exits;
  out->exits_std_error = r.exits_std_error;
  for (int i = 0; i < 4; ++i) out->exit_histogram[i] = r.exit_histogram[static_cast<std::size_t>(i)];
  out->interlacing_checked = r.interlacing_checked;
  out->interlacing_violations = r.interlacing_violations;
  return RMTE_OK;
}

rmte_status rmte_eta_star(double lambda, double c, double* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = rmtedge::spiked::eta_star(lambda, c); });
}

rmte_status rmte_f_of_ell(double ell, double c, double gamma, double* out) {
  RMTE_REQUIRE(out);
  return guarded([&] { *out = rmtedge::spiked::f_of_ell(ell, c, gamma); });
}

rmte_status rmte_precision_loss_gaps(int p, int n, const double* spikes, size_t spike_count, rmte_shrinker shrinker,
                                     int64_t samples, uint64_t seed, int workers, double* out) {
  RMTE_REQUIRE(out);
  if (spike_count > 0) RMTE_REQUIRE(spikes);
  return guarded([&] {
    const auto model = rmtedge::spiked::SpikedModel::make(p, n, std::vector<double>(spikes, spikes + spike_count));
    const auto gaps = rmtedge::spiked::precision_loss_gaps(model, to_shrinker(shrinker), samples, seed, workers);
    std::copy(gaps.begin(), gaps.end(), out);
  });
}

}  // extern "C"
