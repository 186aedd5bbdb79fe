#include "support.hpp"

#include "tml/corpus.hpp"
#include "tml/extension.hpp"

#include <random>

using namespace tml;
using tml::test::pi;
using tml::test::rel;

TEST_SUITE("extension")
{
  TEST_CASE("multiplier coefficients")
  {
    auto const m1 = multiplier(1), m2 = multiplier(2), m3 = multiplier(3);
    REQUIRE(m1.coeffs.size() == 1);
    CHECK(m1.coeffs[0] == doctest::Approx(1));
    REQUIRE(m2.coeffs.size() == 2);
    CHECK(m2.coeffs[0] == doctest::Approx(1));
    CHECK(m2.coeffs[1] == doctest::Approx(1));
    REQUIRE(m3.coeffs.size() == 3);
    CHECK(m3.coeffs[2] == doctest::Approx(1.0 / 3));
    for (int m = 1; m <= 6; ++m) {
      auto const phi = multiplier(m);
      CHECK(phi.value(0) == doctest::Approx(1).epsilon(1e-15));
      if (m > 1) { CHECK(std::abs(phi.value(0, 1)) < 1e-14); }
      // decays like t^{m-1} e^{-t}
      CHECK(std::abs(phi.value(60)) < 1e-15);
    }
  }

  TEST_CASE("multiplier solves the ODE (D² - 1)^m φ = 0")
  {
    for (int m = 1; m <= 6; ++m) {
      auto const q = multiplier(m).shifted_laplacian_coeffs(m);
      CHECK(q.abs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("exp-poly derivative against finite differences")
  {
    Eigen::ArrayXd q(3);
    q << 1, 2, 0.5;
    auto const dq = exp_poly_derivative(q);
    double const t = 0.7, h = 1e-5;
    CHECK(exp_poly(dq, t) == doctest::Approx((exp_poly(q, t + h) - exp_poly(q, t - h)) / (2 * h)).epsilon(1e-8));
  }

  TEST_CASE("energy factor matches the Γ ratio")
  {
    CHECK(energy_factor(1) == doctest::Approx(1).epsilon(1e-12));
    CHECK(energy_factor(2) == doctest::Approx(2).epsilon(1e-12));
    CHECK(energy_factor(3) == doctest::Approx(8.0 / 3).epsilon(1e-12));
    for (int m = 1; m <= 6; ++m) {
      double const oracle = std::tgamma(double(m)) * std::sqrt(pi) / std::tgamma(m - 0.5);
      CHECK(std::abs(energy_factor(m) - oracle) <= 1e-8);
    }
  }

  TEST_CASE("boundary coefficients")
  {
    CHECK(boundary_coefficient(2, 0) == doctest::Approx(1));
    CHECK(boundary_coefficient(3, 1) == doctest::Approx(4.0 / 3));
    CHECK(top_neumann_coefficient(1) == doctest::Approx(1));
    CHECK(top_neumann_coefficient(2) == doctest::Approx(2));
    CHECK(top_neumann_coefficient(3) == doctest::Approx(8.0 / 3));
    for (int m = 1; m <= 6; ++m) {
      for (int k = 0; k <= (m - 1) / 2; ++k) {
        CAPTURE(m);
        CAPTURE(k);
        CHECK(std::abs(boundary_coefficient_oracle(m, k) - boundary_coefficient(m, k)) <= 1e-10);
      }
      double const sign = m % 2 == 0 ? 1 : -1;
      CHECK(std::abs(top_neumann_oracle(m) - sign * top_neumann_coefficient(m)) <= 1e-10);
    }
    CHECK_THROWS_AS(boundary_coefficient(3, 2), std::invalid_argument);
  }

  TEST_CASE("trace and Neumann conditions")
  {
    auto const plan = make_plan<double>({3, 40, 1024, Scheme::uniform});
    auto const g = gaussian(plan);
    auto const field = extend(g, 2);
    CHECK((field.trace_at(0).values - g.values).abs().maxCoeff() < 1e-12);
    CHECK(neumann_trace_fd(field).values.abs().maxCoeff() < 1e-8);
    CHECK_THROWS_AS(extend(g, 1, 2), std::invalid_argument);
  }

  TEST_CASE("harmonic extension against the Poisson kernel")
  {
    auto const plan = make_plan<double>({1, 40, 1024, Scheme::uniform});
    auto const field = extend(gaussian(plan), 1);
    double err = 0;
    for (double y : {0.1, 0.5, 1.0, 2.0}) {
      for (double x : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        err = std::max(err, std::abs(field.value_at(x, y) - kernel_extension([](double r) { return std::exp(-r * r / 2); }, 1, x, y)));
      }
    }
    CHECK(err < 1e-3);
  }

  TEST_CASE("bi-harmonic extension against its kernel")
  {
    auto const plan = make_plan<double>({3, 40, 1024, Scheme::uniform});
    auto const field = extend(gaussian(plan), 2);
    double err = 0;
    for (double y : {0.3, 1.0}) {
      for (double x : {0.0, 1.0, 2.0}) {
        err = std::max(err, std::abs(field.value_at(x, y) - kernel_extension([](double r) { return std::exp(-r * r / 2); }, 2, x, y)));
      }
    }
    CHECK(err < 1e-6);
  }

  TEST_CASE("slab agrees with pointwise evaluation")
  {
    auto const plan = make_plan<double>({1, 20, 256, Scheme::uniform});
    auto const field = extend(gaussian(plan), 1);
    Eigen::ArrayXd ys(2);
    ys << 0.5, 1.5;
    auto const S = field.slab(ys);
    CHECK(S(10, 1) == doctest::Approx(field.value_at(plan->r[10], 1.5)).epsilon(1e-10));
  }

  TEST_CASE("extension energies")
  {
    auto const p1 = make_plan<double>({1, 40, 1024, Scheme::uniform});
    auto const g1 = gaussian(p1);
    double const s1 = std::pow(sobolev_seminorm(g1, 0.25), 2);
    CHECK(std::abs(extension_energy(extend(g1, 1)) - s1) <= 1e-8 * s1);

    auto const p3 = make_plan<double>({3, 40, 1024, Scheme::uniform});
    auto const g3 = gaussian(p3);
    double const s3 = std::pow(sobolev_seminorm(g3, 0.75), 2);
    CHECK(std::abs(extension_energy(extend(g3, 2)) - 2 * s3) <= 1e-8 * s3);
    CHECK(std::abs(laplacian_energy(extend(g3, 2)) - 2 * s3) <= 1e-8 * s3);

    RadialProfile<double> const zero{p3, Eigen::ArrayXd::Zero(p3->N)};
    CHECK(extension_energy(extend(zero, 2)) == 0);

    RadialProfile<double> const scaled{p3, 3 * g3.values};
    CHECK(extension_energy(extend(scaled, 2)) == doctest::Approx(9 * extension_energy(extend(g3, 2))).epsilon(1e-14));
  }

  TEST_CASE("Dirichlet principle")
  {
    auto const plan = make_plan<double>({1, 20, 256, Scheme::uniform});
    auto const field = extend(gaussian(plan), 1);
    auto const bumps = smooth_corpus(plan, 10, 17);
    std::mt19937_64 rng(17);
    for (auto const &b : bumps) {
      double const y0 = 0.5 + 2 * unit_uniform(rng), h = 0.1 + 0.3 * unit_uniform(rng);
      CHECK(dirichlet_perturbation_gain(field, transform(b), y0, h) >= -1e-10);
    }
  }
}
