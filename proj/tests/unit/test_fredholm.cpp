#include <cmath>
#include <random>

#include "doctest.h"
#include "reference_values.hpp"
#include "rmtedge/errors.hpp"
#include "rmtedge/fredholm.hpp"
#include "rmtedge/kernels.hpp"
#include "rmtedge/quadrature.hpp"
#include "rmtedge/tailsums.hpp"

using namespace rmtedge;
using namespace rmtedge::fredholm;

namespace {

// Poisson-binomial law: coefficients of prod_i (1 - l_i + l_i z).
std::vector<double> poisson_binomial(const std::vector<double>& lambda) {
  std::vector<double> c{1.0};
  for (double l : lambda) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += (1.0 - l) * c[k];
      next[k + 1] += l * c[k];
    }
    c = std::move(next);
  }
  return c;
}

double log_det_i_minus(const SymmetricMatrix& m) {
  double s = 0.0;
  for (double l : symmetric_eigenvalues(m).eigenvalues) s += std::log1p(-l);
  return s;
}

}  // namespace

TEST_SUITE("fredholm") {
  TEST_CASE("one-node discretization") {
    const auto k = kernels::airy_kernel();
    const auto m = nystrom_discretize(k, 0.5, 1);
    const auto rule = quadrature::semiinf_rule(1, 0.5, k.length_scale());
    REQUIRE(m.size() == 1);
    CHECK(m(0, 0) == doctest::Approx(rule.weights[0] * k.eval_diag(rule.nodes[0])).epsilon(1e-14));
  }

  TEST_CASE("discretization is symmetric and its trace is the diagonal integral") {
    const auto k = kernels::airy_kernel();
    const auto m = nystrom_discretize(k, 0.0, 128);
    CHECK(m.asymmetry() == 0.0);
    CHECK(std::abs(m.trace() - reference::kGueC0) < 1e-6);
    const auto g = kernels::gue_cd_kernel(40);
    const auto mg = nystrom_discretize(g, std::sqrt(80.0), 128);
    CHECK(std::abs(mg.trace() - tailsums::gue_expected_tailsum(40, 0.0)) < 1e-6);
  }

  TEST_CASE("Fredholm determinant stable under refinement") {
    const auto k = kernels::airy_kernel();
    const double d64 = std::exp(log_det_i_minus(nystrom_discretize(k, 0.0, 64)));
    const double d128 = std::exp(log_det_i_minus(nystrom_discretize(k, 0.0, 128)));
    CHECK(std::abs(d64 - d128) < 5e-7 * d128);
  }

  TEST_CASE("Jacobi eigenvalues") {
    SymmetricMatrix id(3);
    for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1.0;
    CHECK(symmetric_eigenvalues(id).eigenvalues == std::vector<double>{1.0, 1.0, 1.0});
    const auto two = symmetric_eigenvalues(SymmetricMatrix(2, {2.0, 1.0, 1.0, 2.0})).eigenvalues;
    CHECK(two[0] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(two[1] == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 gen(42);
    std::normal_distribution<double> nd;
    for (std::size_t n : {10u, 37u}) {
      SymmetricMatrix a(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = nd(gen);
      const auto eig = symmetric_eigenvalues(a).eigenvalues;
      double s1 = 0.0, s2 = 0.0;
      for (std::size_t i = 0; i < eig.size(); ++i) {
        s1 += eig[i];
        s2 += eig[i] * eig[i];
        if (i > 0) CHECK(eig[i] <= eig[i - 1]);
      }
      CHECK(std::abs(s1 - a.trace()) < 1e-10);
      CHECK(std::abs(s2 - a.frobenius_squared()) < 1e-10);
    }
    CHECK_THROWS_AS(symmetric_eigenvalues(SymmetricMatrix(2, {1.0, 0.5, 0.4, 1.0})), ArgumentError);
  }

  TEST_CASE("counting from a spectrum matches the Poisson-binomial law") {
    const std::vector<double> lambda{0.9, 0.4, 0.25, 1e-3, 1e-7, 0.0, -1e-12};
    const auto exact = poisson_binomial(lambda);
    const auto d = counting_from_spectrum(lambda, 5);
    for (int k = 0; k <= 5; ++k) CHECK(std::abs(d.probs[k] - exact[k]) < 1e-15);
    CHECK(!d.clamped);
    const std::vector<double> near_one{1.0 - 1e-13, 0.5};
    CHECK(counting_from_spectrum(near_one, 2).clamped);
    CHECK_THROWS_AS(counting_from_spectrum(std::vector<double>{1.0}, 2), NumericalError);
  }

  TEST_CASE("Airy kernel window at zero") {
    const auto d = counting_distribution(kernels::airy_kernel(), 0.0);
    CHECK(std::abs(d.probs[0] - 0.969373) < 5e-6);
    CHECK(std::abs(d.probs[0] * d.probs[0] - 0.9397) < 1e-3);
    CHECK(std::abs(d.mean() - reference::kGueC0) < 1e-6);
    CHECK(std::abs(d.total() - 1.0) < 1e-6);
    CHECK(d.error_estimate <= 1e-11);
    CHECK(!d.clamped);
  }

  TEST_CASE("GUE rows N = 10 and N = 100") {
    const auto d10 = counting_distribution(kernels::gue_cd_kernel(10), std::sqrt(20.0));
    CHECK(d10.probs[1] == doctest::Approx(2.868e-2).epsilon(5e-4));
    CHECK(d10.probs[2] == doctest::Approx(1.36e-6).epsilon(5e-3));
    CHECK(d10.probs[3] > 6.9e-15);
    CHECK(d10.probs[3] < 6.9e-13);
    const auto d100 = counting_distribution(kernels::gue_cd_kernel(100), std::sqrt(200.0));
    CHECK(d100.probs[1] == doctest::Approx(3.019e-2).epsilon(5e-4));
    CHECK(d100.probs[2] == doctest::Approx(2.00e-6).epsilon(5e-3));
    for (const auto* d : {&d10, &d100}) {
      for (std::size_t k = 0; k < d->probs.size(); ++k) {
        CHECK(d->probs[k] >= -1e-10);
        CHECK(d->probs[k] <= 1.0);
        if (k > 0) CHECK(d->probs[k] <= d->probs[k - 1]);
      }
      CHECK(std::abs(d->total() - 1.0) < 1e-6);
    }
    CHECK(std::abs(d10.mean() - tailsums::gue_expected_tailsum(10, 0.0)) < 1e-6);
    CHECK(std::abs(d100.mean() - tailsums::gue_expected_tailsum(100, 0.0)) < 1e-6);
  }

  TEST_CASE("grid doubling is Cauchy") {
    const auto k = kernels::gue_cd_kernel(25);
    const double a = std::sqrt(50.0);
    std::vector<double> p;
    for (int m : {8, 16, 32, 64}) {
      p.push_back(counting_from_spectrum(symmetric_eigenvalues(nystrom_discretize(k, a, m)).eigenvalues, 3).probs[1]);
    }
    CHECK(std::abs(p[2] - p[1]) < std::abs(p[1] - p[0]));
    CHECK(std::abs(p[3] - p[2]) < std::abs(p[2] - p[1]));
  }

  TEST_CASE("window inside the bulk is rejected") {
    CHECK_THROWS_AS(counting_distribution(kernels::gue_cd_kernel(5), -20.0), NumericalError);
    CHECK_THROWS_AS(nystrom_discretize(kernels::airy_kernel(), 0.0, 513), ArgumentError);
  }
}
