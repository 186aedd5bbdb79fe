#include "support.hpp"

#include "tml/constants.hpp"
#include "tml/corpus.hpp"
#include "tml/extension.hpp"
#include "tml/functionals.hpp"

using namespace tml;
using tml::test::pi;
using tml::test::rel;

TEST_SUITE("functionals")
{
  TEST_CASE("series helpers")
  {
    CHECK(expm1_minus_x(1e-8) == doctest::Approx(5e-17).epsilon(1e-6));
    CHECK(expm1_minus_x(2.0) == doctest::Approx(std::exp(2.0) - 3).epsilon(1e-14));
    CHECK(exp_tail(0.5, 2) == doctest::Approx(std::exp(0.5) - 1 - 0.5 - 0.125).epsilon(1e-12));
    CHECK(exp_tail(1e-3, 1) == doctest::Approx(expm1_minus_x(1e-3)).epsilon(1e-12));
  }

  TEST_CASE("ratio functional exceeds beta")
  {
    for (int n : {1, 3}) {
      auto const plan = make_plan<double>({n, 20, 256, Scheme::uniform});
      for (auto const &u : smooth_corpus(plan, 20, 23)) {
        CHECK(tm_ratio(u, 5.0).value > 5.0);
      }
    }
  }

  TEST_CASE("ratio functional is dilation invariant")
  {
    auto const plan = make_plan<double>({3, 40, 1024, Scheme::uniform});
    auto const u = gaussian(plan, 1, 0.3);
    double const F = tm_ratio(u, 10).value;
    for (double lambda : {0.5, 2.0}) {
      CHECK(std::abs(tm_ratio(dilate(u, lambda), 10).value - F) <= 1e-6 * F);
    }
  }

  TEST_CASE("small amplitude limit")
  {
    auto const plan = make_plan<double>({3, 40, 512, Scheme::uniform});
    double previous = INFINITY;
    for (double c : {1e-1, 1e-2, 1e-3}) {
      double const gap = tm_ratio(gaussian(plan, 1, c), 10).value - 10;
      CHECK(gap > 0);
      CHECK(gap < 100 * c * c);
      CHECK(gap < previous);
      previous = gap;
    }
  }

  TEST_CASE("exact-growth ratio")
  {
    auto const plan = make_plan<double>({3, 40, 512, Scheme::uniform});
    auto const u = gaussian(plan, 1, 0.2);
    CHECK(rel(exact_growth_ratio(u, 10, 0).value, tm_ratio(u, 10).value) < 1e-12);
    double previous = INFINITY;
    for (double p : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      double const v = exact_growth_ratio(u, 10, p).value;
      CHECK(v <= previous);
      previous = v;
    }
    CHECK(exact_growth_ratio(u, 5, 1).value <= exact_growth_ratio(u, 10, 1).value);
    CHECK(exact_growth_ratio(u, 10, 2, GrowthDenominator::one_plus_sq).value >= exact_growth_ratio(u, 10, 2).value);

    auto const g = gaussian(plan);
    RadialProfile<double> const unit{plan, g.values / sobolev_seminorm(g, 0.75)};
    auto const crit = exact_growth_ratio(unit, 6 * pi * pi, 2);
    CHECK(std::isfinite(crit.value));
    CHECK_FALSE(crit.overflow);
  }

  TEST_CASE("overflow is flagged, not raised")
  {
    auto const plan = make_plan<double>({1, 20, 256, Scheme::uniform});
    auto const v = tm_ratio(gaussian(plan, 1, 100), 10);
    CHECK(v.overflow);
    CHECK(std::isinf(v.value));
  }

  TEST_CASE("constraint nonlinearity")
  {
    CHECK(g_lambda(0, 0.5) == 0);
    double const t = 1e-3;
    CHECK(rel(g_lambda(t, 0.5) / std::pow(t, 4), 6 * pi * pi * 0.5) < 0.01);
    auto const plan = make_plan<double>({3, 20, 256, Scheme::uniform});
    RadialProfile<double> const zero{plan, Eigen::ArrayXd::Zero(plan->N)};
    CHECK(G_lambda(zero, 0.5) == 0);
    CHECK(J_lambda(zero, 0.5) == 0);
    CHECK(i_lambda_via_trace(zero, 0.5) == 0);
  }

  TEST_CASE("constraint changes sign along rays")
  {
    auto const plan = make_plan<double>({3, 20, 256, Scheme::uniform});
    auto const corpus = smooth_corpus(plan, 10, 29);
    for (double lambda : {0.25, 0.5, 0.75}) {
      for (auto const &u : corpus) {
        double const umax = u.values.abs().maxCoeff();
        double const S = std::sqrt(700 / (12 * pi * pi)) / umax;
        bool positive = false, negative = false;
        for (int k = 1; k <= 400; ++k) {
          RadialProfile<double> const v{plan, (S * k / 400) * u.values};
          double const h = G_lambda(v, lambda);
          positive = positive || (h > 0 && !negative);
          negative = negative || (positive && h < 0);
        }
        CHECK(positive);
        CHECK(negative);
      }
    }
  }

  TEST_CASE("trace energy bridges to the boundary functional")
  {
    auto const plan = make_plan<double>({3, 20, 256, Scheme::uniform});
    for (auto const &u : smooth_corpus(plan, 20, 31)) {
      RadialProfile<double> const v{plan, 0.1 * u.values / u.values.abs().maxCoeff()};
      double const J = J_lambda(v, 0.5);
      CHECK(std::abs(i_lambda_via_trace(v, 0.5) - J) <= 1e-8 * std::max(1.0, std::abs(J)));
    }
    auto const g = gaussian(make_plan<double>({3, 40, 512, Scheme::uniform}));
    RadialProfile<double> const g2{g.plan, 2 * g.values};
    CHECK(laplacian_energy(extend(g2, 2)) == doctest::Approx(4 * laplacian_energy(extend(g, 2))).epsilon(1e-13));
  }

  TEST_CASE("radial reduction")
  {
    for (int n : {2, 3, 4}) {
      CAPTURE(n);
      auto const plan = make_plan<double>({n, 20, 256, Scheme::uniform});
      RadialReduction const rr(plan);
      for (auto const &u : smooth_corpus(plan, 20, 11)) {
        auto const [lhs, rhs] = rr.l2_identity(u);
        CHECK(std::abs(lhs - rhs) <= 1e-6 * rhs);
        CHECK(rr.gradient_energy(u) <= std::pow(sobolev_seminorm(u, 0.25 * n), 2) + 1e-6);
      }
      RadialProfile<double> const zero{plan, Eigen::ArrayXd::Zero(plan->N)};
      CHECK(rr.apply(zero).values.abs().maxCoeff() == 0);
    }
    auto const g = gaussian(make_plan<double>({3, 40, 512, Scheme::uniform}));
    auto const [a, b] = RadialReduction(g.plan).l2_identity(g);
    CHECK(std::abs(a - b) <= 1e-6 * b);
    CHECK(radial_reduction(g).size() > 0);
  }

  TEST_CASE("Hardy-Rellich margin")
  {
    for (int n : {2, 3, 4}) {
      CAPTURE(n);
      auto const plan = make_plan<double>({n, 20, 256, Scheme::uniform});
      for (auto const &u : smooth_corpus(plan, 50, 13)) {
        auto const hr = hardy_rellich(u);
        CHECK(hr.margin() >= -1e-8 * hr.lhs);
        if (n == 2) { CHECK(std::abs(hr.margin()) <= 1e-6 * hr.lhs); }
      }
    }
    auto const plan = make_plan<double>({3, 40, 512, Scheme::uniform});
    auto const g = gaussian(plan);
    CHECK(hardy_rellich_margin(g, 3) > 0);
    CHECK(hardy_rellich_margin(gaussian(plan, 1, 3), 3) == doctest::Approx(9 * hardy_rellich_margin(g, 3)).epsilon(1e-12));
    CHECK_THROWS_AS(hardy_rellich_margin(g, 2), std::invalid_argument);
  }

  TEST_CASE("rearrangement comparison")
  {
    auto const plan = make_plan<double>({3, 20, 256, Scheme::uniform});
    auto const g = gaussian(plan, 1, 0.1);
    auto const c = rearrangement_comparison(g, 10);
    CHECK(c.lhs <= c.rhs);
    for (auto const &u : smooth_corpus(plan, 20, 37)) {
      RadialProfile<double> const v{plan, 0.2 * u.values / u.values.abs().maxCoeff()};
      auto const r = rearrangement_comparison(v, 10);
      CHECK(r.lhs <= r.rhs + 1e-8);
    }
    auto const tiny = rearrangement_comparison(gaussian(plan, 1, 1e-6), 10);
    CHECK(std::abs(tiny.lhs) <= 1e-9 * c.lhs);
    CHECK(std::abs(tiny.rhs) <= 1e-9 * c.rhs);
  }
}
