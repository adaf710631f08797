// Exercises the shared library through the C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <vector>

#include "rmtedge/rmtedge.h"

namespace {

const double kPi = 3.14159265358979323846;

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and status names") {
  CHECK(std::strlen(rmte_version()) > 0);
  CHECK(std::strcmp(rmte_status_name(RMTE_OK), "ok") == 0);
  CHECK(std::strlen(rmte_status_name(RMTE_ERR_CONVERGENCE)) > 0);
  CHECK(std::strlen(rmte_status_name(static_cast<rmte_status>(99))) > 0);
}

TEST_CASE("null out-pointers are rejected") {
  CHECK(rmte_airy_ai(0.0, nullptr) == RMTE_ERR_NULL);
  CHECK(std::strlen(rmte_last_error()) > 0);
  CHECK(rmte_kernel_create_airy(nullptr) == RMTE_ERR_NULL);
  CHECK(rmte_kernel_eval(nullptr, 0.0, 0.0, nullptr) == RMTE_ERR_NULL);
  CHECK(rmte_spiked_run(nullptr, nullptr) == RMTE_ERR_NULL);
  rmte_kernel_destroy(nullptr);
  rmte_count_dist_destroy(nullptr);
  rmte_spiked_result_destroy(nullptr);
}

TEST_CASE("special functions") {
  double v = 0.0;
  REQUIRE(rmte_airy_ai(0.0, &v) == RMTE_OK);
  CHECK(v == doctest::Approx(0.3550280538878172).epsilon(1e-14));
  REQUIRE(rmte_airy_tail(0.0, &v) == RMTE_OK);
  CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(rmte_airy_ai(NAN, &v) == RMTE_ERR_DOMAIN);
  CHECK(rmte_airy_ai_prime(INFINITY, &v) == RMTE_ERR_DOMAIN);

  REQUIRE(rmte_gamma(5.0, &v) == RMTE_OK);
  CHECK(v == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(rmte_gamma(-1.0, &v) == RMTE_ERR_DOMAIN);

  double m = 0.0;
  int e = 0;
  REQUIRE(rmte_hermite_phi(0.0, 0, &m, &e) == RMTE_OK);
  CHECK(std::ldexp(m, e) == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-14));
  REQUIRE(rmte_hermite_phi(60.0, 500, &m, &e) == RMTE_OK);
  CHECK(std::abs(m) >= 0.5);
  CHECK(std::abs(m) < 1.0);
  CHECK(rmte_hermite_phi(1.0, -1, &m, &e) != RMTE_OK);
}

TEST_CASE("kernels") {
  rmte_kernel* k = nullptr;
  CHECK(rmte_kernel_create_gue(0, &k) == RMTE_ERR_ARGUMENT);
  REQUIRE(rmte_kernel_create_gue(20, &k) == RMTE_OK);
  double a = 0.0, b = 0.0, d = 0.0;
  REQUIRE(rmte_kernel_eval(k, 1.3, -0.4, &a) == RMTE_OK);
  REQUIRE(rmte_kernel_eval(k, -0.4, 1.3, &b) == RMTE_OK);
  CHECK(a == doctest::Approx(b).epsilon(1e-13));
  REQUIRE(rmte_kernel_eval_diag(k, 0.7, &d) == RMTE_OK);
  CHECK(d > 0.0);
  rmte_kernel_destroy(k);

  REQUIRE(rmte_wishart_limit_diag(0.0, &d) == RMTE_OK);
  CHECK(d > 0.0);
  CHECK(rmte_wishart_limit_diag(-20.0, &d) == RMTE_ERR_DOMAIN);
}

TEST_CASE("counting distribution of the Airy process above 0") {
  rmte_kernel* airy = nullptr;
  REQUIRE(rmte_kernel_create_airy(&airy) == RMTE_OK);
  rmte_count_dist* dist = nullptr;
  REQUIRE(rmte_counting_distribution(airy, 0.0, 3, 1e-11, &dist) == RMTE_OK);
  rmte_kernel_destroy(airy);

  int k_max = 0;
  REQUIRE(rmte_count_dist_k_max(dist, &k_max) == RMTE_OK);
  CHECK(k_max == 3);
  double p0 = 0.0, mean = 0.0;
  REQUIRE(rmte_count_dist_prob(dist, 0, &p0) == RMTE_OK);
  CHECK(std::abs(p0 - 0.969373) < 5e-6);
  REQUIRE(rmte_count_dist_mean(dist, &mean) == RMTE_OK);
  CHECK(mean == doctest::Approx(1.0 / (6.0 * std::sqrt(3.0) * kPi)).epsilon(1e-8));
  CHECK(rmte_count_dist_prob(dist, 4, &p0) == RMTE_ERR_ARGUMENT);
  int grid = 0, clamped = -1;
  double err = -1.0;
  REQUIRE(rmte_count_dist_info(dist, &grid, &err, &clamped) == RMTE_OK);
  CHECK(grid >= 32);
  CHECK(err >= 0.0);
  CHECK(clamped == 0);
  rmte_count_dist_destroy(dist);
}

TEST_CASE("tail sums and constants") {
  double c = 0.0, s = 0.0, dbl = 0.0;
  REQUIRE(rmte_cq_closed(0.0, &c) == RMTE_OK);
  CHECK(c == doctest::Approx(1.0 / (6.0 * std::sqrt(3.0) * kPi)).epsilon(1e-14));
  REQUIRE(rmte_cq_quadrature(1.0, &s, &dbl) == RMTE_OK);
  REQUIRE(rmte_cq_closed(1.0, &c) == RMTE_OK);
  CHECK(std::abs(s - c) < 1e-9);
  CHECK(std::abs(dbl - c) < 1e-9);
  CHECK(rmte_cq_closed(-1.0, &c) == RMTE_ERR_DOMAIN);

  double e = 0.0;
  REQUIRE(rmte_gue_expected_tailsum(10, 0.0, 1e-10, &e) == RMTE_OK);
  CHECK(std::abs(e - 0.028681) < 1e-6);

  rmte_wishart_constant w{};
  REQUIRE(rmte_wishart_c0(1e-12, &w) == RMTE_OK);
  CHECK(std::abs(w.boundary_part - 5.0 / 36.0) < 1e-9);
  CHECK(w.total == doctest::Approx(w.airy_part + w.boundary_part).epsilon(1e-12));

  double integral = 0.0, prefactor = 0.0;
  REQUIRE(rmte_wishart_limit_tailsum(0.5, 0.0, 0.0, 1e-10, &integral, &prefactor) == RMTE_OK);
  CHECK(integral == doctest::Approx(w.total).epsilon(1e-8));
  CHECK(prefactor == doctest::Approx(1.0));
}

TEST_CASE("gamma functions and edge scalings") {
  rmte_gamma_functions g{};
  REQUIRE(rmte_gamma_functions_eval(1.0, &g) == RMTE_OK);
  CHECK(g.lambda == doctest::Approx(4.0));
  CHECK(g.lambda_prime == doctest::Approx(2.0));
  CHECK(g.tau == doctest::Approx(std::pow(2.0, 4.0 / 3.0)));
  CHECK(g.sigma == doctest::Approx(std::pow(2.0, 1.0 / 3.0)));
  CHECK(rmte_gamma_functions_eval(0.0, &g) == RMTE_ERR_DOMAIN);

  rmte_edge_scaling gue{}, wis{};
  REQUIRE(rmte_edge_scaling_gue(100, &gue) == RMTE_OK);
  CHECK(gue.ensemble == RMTE_GUE);
  CHECK(gue.mu == doctest::Approx(std::sqrt(200.0)));
  double delta = 0.0;
  CHECK(rmte_delta_N(0.5, &gue, &delta) == RMTE_ERR_ARGUMENT);
  REQUIRE(rmte_edge_scaling_wishart(100, 200, &wis) == RMTE_OK);
  CHECK(wis.gamma_N == doctest::Approx(0.5));
  REQUIRE(rmte_delta_N(wis.gamma_N, &wis, &delta) == RMTE_OK);
  CHECK(std::isfinite(delta));
  CHECK(rmte_edge_scaling_wishart(300, 200, &wis) == RMTE_ERR_ARGUMENT);
}

TEST_CASE("ensemble sampling and Monte Carlo") {
  const rmte_ensemble gue{RMTE_GUE, 30, 0};
  std::vector<double> eigs(30);
  CHECK(rmte_sample_eigenvalues(&gue, 5, 0, eigs.data(), 10) == RMTE_ERR_ARGUMENT);
  REQUIRE(rmte_sample_eigenvalues(&gue, 5, 0, eigs.data(), eigs.size()) == RMTE_OK);
  for (std::size_t i = 1; i < eigs.size(); ++i) CHECK(eigs[i] <= eigs[i - 1]);
  std::vector<double> again(30);
  REQUIRE(rmte_sample_eigenvalues(&gue, 5, 0, again.data(), again.size()) == RMTE_OK);
  CHECK(eigs == again);

  double lo = 0.0, hi = 0.0;
  REQUIRE(rmte_bulk_interval(&gue, &lo, &hi) == RMTE_OK);
  CHECK(hi == doctest::Approx(std::sqrt(60.0)));
  CHECK(lo == doctest::Approx(-std::sqrt(60.0)));

  rmte_mc_estimate one{}, three{};
  CHECK(rmte_mc_expected_tailsum(&gue, 0.0, hi, 99, 1, 1, &one) == RMTE_ERR_ARGUMENT);
  REQUIRE(rmte_mc_expected_tailsum(&gue, 0.0, hi, 500, 11, 1, &one) == RMTE_OK);
  REQUIRE(rmte_mc_expected_tailsum(&gue, 0.0, hi, 500, 11, 3, &three) == RMTE_OK);
  CHECK(one.mean == three.mean);
  CHECK(one.std_error == three.std_error);
  CHECK(one.samples == 500);
  CHECK(one.seed == 11);

  const rmte_ensemble wis{RMTE_WISHART, 20, 40};
  REQUIRE(rmte_mc_both_edges_inside(&wis, 200, 3, 2, &one) == RMTE_OK);
  CHECK(one.mean >= 0.0);
  CHECK(one.mean <= 1.0);
  const rmte_ensemble bad{RMTE_WISHART, 50, 40};
  CHECK(rmte_mc_both_edges_inside(&bad, 200, 3, 1, &one) == RMTE_ERR_ARGUMENT);
}

TEST_CASE("spiked model") {
  const int p_list[] = {20, 40};
  const double spikes[] = {6.0, 3.0};
  rmte_spiked_config cfg{};
  cfg.p_list = p_list;
  cfg.p_count = 2;
  cfg.gamma = 0.5;
  cfg.spikes = spikes;
  cfg.spike_count = 2;
  cfg.shrinker = RMTE_SHRINK_LINEAR;
  cfg.q = 0.5;
  cfg.samples = 100;
  cfg.seed = 2;
  cfg.dense = 1;
  cfg.workers = 2;
  rmte_spiked_result* res = nullptr;
  REQUIRE(rmte_spiked_run(&cfg, &res) == RMTE_OK);
  std::size_t count = 0;
  REQUIRE(rmte_spiked_result_count(res, &count) == RMTE_OK);
  REQUIRE(count == 2);
  rmte_spiked_row row{};
  REQUIRE(rmte_spiked_result_row(res, 1, &row) == RMTE_OK);
  CHECK(row.p == 40);
  CHECK(row.n == 80);
  CHECK(row.rank == 2);
  CHECK(row.interlacing_checked == 100);
  CHECK(row.interlacing_violations == 0);
  CHECK(row.exit_histogram[0] + row.exit_histogram[1] + row.exit_histogram[2] + row.exit_histogram[3] == 100);
  CHECK(rmte_spiked_result_row(res, 2, &row) == RMTE_ERR_ARGUMENT);
  rmte_spiked_result_destroy(res);

  const double unsorted[] = {3.0, 6.0};
  cfg.spikes = unsorted;
  CHECK(rmte_spiked_run(&cfg, &res) == RMTE_ERR_ARGUMENT);

  double v = 0.0;
  REQUIRE(rmte_eta_star(std::pow(1.0 + std::sqrt(0.5), 2), 0.5, &v) == RMTE_OK);
  CHECK(v == 1.0);
  REQUIRE(rmte_f_of_ell(4.0, 1.0, 1.0, &v) == RMTE_OK);
  CHECK(v == doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-14));
  CHECK(rmte_f_of_ell(0.5, 1.0, 1.0, &v) == RMTE_ERR_DOMAIN);

  std::vector<double> gaps(5);
  REQUIRE(rmte_precision_loss_gaps(20, 40, spikes, 2, RMTE_SHRINK_ETA_STAR, 5, 1, 1, gaps.data()) == RMTE_OK);
  for (double g : gaps) CHECK(std::isfinite(g));
}

}  // TEST_SUITE
