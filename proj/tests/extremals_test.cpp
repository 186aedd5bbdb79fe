#include "support.hpp"

#include "tml/constants.hpp"
#include "tml/corpus.hpp"
#include "tml/extremals.hpp"
#include "tml/rearrangement.hpp"

using namespace tml;
using tml::test::pi;

TEST_SUITE("extremals")
{
  TEST_CASE("critical normalisation")
  {
    auto const plan = make_plan<double>({3, 40, 1024, Scheme::uniform});
    auto const g = gaussian(plan);
    double const a = 1 / sobolev_seminorm(g, 0.75);
    // unit seminorm is preserved by (amplitude, width) = (a, σ), while ‖·‖₂² scales like σ³
    double const sigma = std::pow(4 / std::pow(a * lp_norm(g, 2.0), 2), 1.0 / 3);
    auto const u = gaussian(plan, sigma, a);
    REQUIRE(lp_norm(u, 2.0) == doctest::Approx(2).epsilon(1e-10));

    auto const v = normalize_critical(u);
    CHECK(v.amplitude == doctest::Approx(1).epsilon(1e-6));
    CHECK(v.dilation == doctest::Approx(std::pow(2.0, 2.0 / 3)).epsilon(1e-6));
    CHECK(std::abs(lp_norm(v.profile, 2.0) - 1) < 1e-6);
    CHECK(std::abs(sobolev_seminorm(v.profile, 0.75) - 1) < 1e-6);

    auto const w = normalize_critical(v.profile);
    CHECK(w.dilation == doctest::Approx(1).epsilon(1e-6));
    CHECK_THROWS_AS(normalize_critical(RadialProfile<double>{plan, Eigen::ArrayXd::Zero(plan->N)}), std::invalid_argument);
  }

  TEST_CASE("subcritical maximiser")
  {
    auto const plan = make_plan<double>({3, 20, 256, Scheme::uniform});
    double const beta = 0.9 * adams_sharp_constant(3, 1.5);
    auto const res = maximize_subcritical(3, beta, gaussian(plan));
    CHECK(res.F >= res.F_initial);
    CHECK(res.F > beta);
    CHECK_FALSE(res.overflow);
    for (size_t i = 1; i < res.trace.size(); ++i) {
      CHECK(res.trace[i] >= res.trace[i - 1] * (1 - 1e-12));
    }
    CHECK(std::abs(sobolev_seminorm(res.profile, 0.75) - 1) < 1e-8);
    auto const [v, rep] = fourier_rearrange(res.profile);
    CHECK((v.values - res.profile.values).abs().maxCoeff() < 1e-6);

    auto const again = maximize_subcritical(3, beta, gaussian(plan));
    CHECK(again.F == res.F);
    CHECK((again.profile.values == res.profile.values).all());
  }

  TEST_CASE("maximiser refuses beta near the sharp constant")
  {
    auto const plan = make_plan<double>({3, 20, 256, Scheme::uniform});
    CHECK_THROWS_AS(maximize_subcritical(3, 0.99 * adams_sharp_constant(3, 1.5), gaussian(plan)), std::invalid_argument);
    CHECK_THROWS_AS(maximize_subcritical(1, 10, gaussian(plan)), std::invalid_argument);
  }

  TEST_CASE("Nehari scale")
  {
    auto const plan = make_plan<double>({3, 40, 256, Scheme::uniform});
    auto const g = gaussian(plan);
    double const s0 = nehari_scale(g, 0.5);
    RadialProfile<double> const on{plan, s0 * g.values};
    CHECK(nehari_scale(on, 0.5) == doctest::Approx(1).epsilon(1e-8));

    auto h = [&](double s) { return G_lambda(RadialProfile<double>{plan, s * g.values}, 0.5); };
    CHECK(h(0.5 * s0) > 0);
    double const clamp = std::sqrt(700 / (12 * pi * pi));
    if (2 * s0 < clamp) { CHECK(h(2 * s0) < 0); }

    // first sign change on a fine scan of (0, clamp]
    int const    samples = 10000;
    double const cell = clamp / samples;
    double       first = 0;
    for (int k = 1; k <= samples; ++k) {
      if (h(k * cell) <= 0) {
        first = k * cell;
        break;
      }
    }
    REQUIRE(first > 0);
    CHECK(std::abs(s0 - first) <= cell);

    CHECK_THROWS_AS(nehari_scale(g, 1.5), std::invalid_argument);
  }

  TEST_CASE("ground state")
  {
    for (double lambda : {0.25, 0.5, 0.75}) {
      CAPTURE(lambda);
      auto const res = ground_state(lambda);
      CHECK(res.A > 0);
      CHECK(res.A < 0.5);
      CHECK(res.spread <= 0.01);
      CHECK(res.residual <= 1e-6 * res.scale);
      CHECK(std::abs(res.m_lambda - res.A) <= 1e-8);
      int ok = 0;
      for (auto const &s : res.starts) {
        ok += s.ok;
      }
      CHECK(ok == 3);

      auto const lift = lift_ground_state(res);
      CHECK(std::abs(lift.I - lift.J) <= 1e-8);
      CHECK(lift.neumann <= 1e-8);
      CHECK(std::abs(lift.bulk - 2 * lift.seminorm_sq) <= 1e-8 * lift.seminorm_sq);
    }
  }

  TEST_CASE("ground-state level does not increase under refinement")
  {
    for (double lambda : {0.25, 0.5, 0.75}) {
      GroundStateOptions coarse, fine;
      fine.grid.N = 2 * coarse.grid.N;
      CHECK(ground_state(lambda, fine).A <= ground_state(lambda, coarse).A + 1e-8);
    }
  }

  TEST_CASE("ground state is deterministic")
  {
    auto const a = ground_state(0.5), b = ground_state(0.5);
    CHECK(a.A == b.A);
    CHECK((a.profile.values == b.profile.values).all());
  }
}
