#include <cmath>
#include <numbers>

#include "doctest.h"
#include "reference_values.hpp"
#include "rmtedge/errors.hpp"
#include "rmtedge/fredholm.hpp"
#include "rmtedge/kernels.hpp"
#include "rmtedge/tailsums.hpp"

using namespace rmtedge;
using namespace rmtedge::tailsums;

TEST_SUITE("tailsums") {
  TEST_CASE("c_q closed form") {
    CHECK(std::abs(cq_closed(0.0) - 1.0 / (6.0 * std::sqrt(3.0) * std::numbers::pi)) < 1e-16);
    const double reduced = 2.0 / (std::sqrt(std::numbers::pi) * std::pow(12.0, 1.5) * std::tgamma(1.5));
    CHECK(cq_closed(0.0) == doctest::Approx(reduced).epsilon(1e-14));
    for (const auto& row : reference::kCq) CHECK(cq_closed(row.x) == doctest::Approx(row.value).epsilon(1e-13));
    CHECK_THROWS_AS(cq_closed(-0.5), DomainError);
  }

  TEST_CASE("c_q by quadrature, both routes") {
    for (const auto& row : reference::kCq) {
      CAPTURE(row.x);
      const auto r = cq_quadrature_routes(row.x);
      CHECK(std::abs(r.single - row.value) < 1e-9);
      CHECK(std::abs(r.double_integral - row.value) < 1e-9);
      CHECK(std::abs(r.single - r.double_integral) < 1e-7);
      CHECK(std::abs(cq_quadrature(row.x) - cq_closed(row.x)) < 1e-8);
    }
  }

  TEST_CASE("finite-N expected tail sum") {
    CHECK(gue_expected_tailsum(10, 0.0) == doctest::Approx(0.028681).epsilon(1e-4));
    CHECK(gue_expected_tailsum(500, 0.0) == doctest::Approx(0.030480).epsilon(1e-4));
    const double scaled = std::pow(100.0, 2.0 / 3.0) * gue_expected_tailsum(100, 1.0);
    CHECK(std::abs(scaled / cq_closed(1.0) - 1.0) < 0.1);
    CHECK_THROWS_AS(gue_expected_tailsum(2001, 0.0), ArgumentError);
  }

  TEST_CASE("expected tail sum converges to c_q") {
    for (double q : {0.0, 0.5, 1.0}) {
      const double dev50 = std::abs(std::pow(50.0, 2.0 * q / 3.0) * gue_expected_tailsum(50, q) - cq_closed(q));
      const double dev500 = std::abs(std::pow(500.0, 2.0 * q / 3.0) * gue_expected_tailsum(500, q) - cq_closed(q));
      CHECK(dev500 < dev50);
    }
  }

  TEST_CASE("expected tail sum agrees with the counting route and bounds P(exit)") {
    for (int N : {10, 100}) {
      const auto d = fredholm::counting_distribution(kernels::gue_cd_kernel(N), std::sqrt(2.0 * N));
      const double e = gue_expected_tailsum(N, 0.0);
      CHECK(std::abs(d.mean() - e) < 1e-6);
      CHECK(e >= d.probs[1] + d.probs[2]);
    }
  }

  TEST_CASE("gamma functions") {
    for (double g : {0.1, 0.5, 1.0}) {
      const GammaFunctions f(g);
      CHECK(std::abs(f.sigma() * f.lambda_prime() - f.tau()) < 1e-12);
      CHECK(f.lambda() == doctest::Approx(std::pow(1.0 + std::sqrt(g), 2)).epsilon(1e-15));
    }
    CHECK(GammaFunctions(1.0).tau() == doctest::Approx(std::pow(2.0, 4.0 / 3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(GammaFunctions(0.0), DomainError);
    CHECK_THROWS_AS(GammaFunctions(1.5), DomainError);
  }

  TEST_CASE("edge scalings") {
    const auto g = EdgeScaling::gue(100);
    CHECK(g.mu == doctest::Approx(std::sqrt(200.0)));
    CHECK(g.scale == doctest::Approx(1.0 / (std::sqrt(2.0) * std::pow(100.0, 1.0 / 6.0))));
    const auto w = EdgeScaling::wishart(100, 400);
    const double Nh = 100.5, nh = 400.5, gh = Nh / nh;
    CHECK(w.mu == doctest::Approx(std::pow(std::sqrt(Nh) + std::sqrt(nh), 2)));
    const double c = std::cbrt(1.0 + std::sqrt(gh)) * (1.0 + 1.0 / std::sqrt(gh));
    CHECK(w.scale == doctest::Approx(c * std::cbrt(Nh)));
    CHECK(w.gamma_N == 0.25);
    CHECK_THROWS_AS(EdgeScaling::wishart(10, 5), ArgumentError);
  }

  TEST_CASE("window shift delta_N") {
    // nlambda(c) = mu_N solved for c.
    const auto w = EdgeScaling::wishart(300, 700);
    const double c_zero = std::pow(std::sqrt(w.mu / w.n) - 1.0, 2);
    CHECK(std::abs(delta_N(c_zero, w)) < 1e-9);

    for (int N : {100, 400, 1600}) {
      const auto s = EdgeScaling::wishart(N, N);
      const double d = delta_N(s.gamma_N, s);
      CHECK(std::abs(d) <= 0.5);
      CHECK(std::abs(d) <= 2.5 * std::pow(N, -1.0 / 3.0));
    }
    const auto s = EdgeScaling::wishart(1600, 1600);
    const double c = s.gamma_N + GammaFunctions(1.0).sigma() * std::pow(1600.0, -2.0 / 3.0);
    CHECK(std::abs(delta_N(c, s) - 1.0) < 0.15);
    CHECK_THROWS_AS(delta_N(2.5, s), DomainError);
  }

  TEST_CASE("Wishart limit tail sum") {
    const auto c0 = wishart_c0();
    CHECK(std::abs(c0.total - reference::kWishartC0) < 1e-10);
    CHECK(std::abs(c0.boundary_part - 5.0 / 36.0) < 1e-10);
    CHECK(std::abs(c0.airy_part - reference::kGueC0) < 1e-10);
    CHECK(std::abs(c0.total - (c0.airy_part + 5.0 / 36.0)) < 1e-7);
    for (double g : {0.25, 1.0}) {
      const auto r = wishart_limit_tailsum(g, 0.0, 0.0);
      CHECK(std::abs(r.integral - c0.total) < 1e-8);
      CHECK(r.prefactor == 1.0);
    }
    CHECK(wishart_limit_tailsum(1.0, 1.0, 0.0).prefactor == doctest::Approx(std::pow(2.0, 4.0 / 3.0)));
    CHECK(wishart_limit_tailsum(0.5, 0.0, 3.0).integral < wishart_limit_tailsum(0.5, 0.0, 0.0).integral);
    CHECK_THROWS_AS(wishart_limit_tailsum(0.5, 0.0, -10.5), DomainError);
  }
}
