#include "support.hpp"

#include "tml/constants.hpp"
#include "tml/sharpness.hpp"

using namespace tml;

namespace {

auto eps_sweep(int lo = 3, int hi = 10) -> std::vector<double>
{
  std::vector<double> eps;
  for (int k = lo; k <= hi; ++k) {
    eps.push_back(std::pow(2.0, -k));
  }
  return eps;
}

auto grid(int n) -> PlanPtr<double> const &
{
  static auto const g1 = sharpness_grid(1), g3 = sharpness_grid(3);
  return n == 1 ? g1 : g3;
}

auto table(int n) -> std::vector<BlowupRecord> const &
{
  auto make = [](int n) {
    double const b = adams_sharp_constant(n, 0.5 * n);
    return blowup_table(n, {0.9 * b, b}, eps_sweep(), {0, 1, 2}, 1.0, grid(n));
  };
  static auto const t1 = make(1), t3 = make(3);
  return n == 1 ? t1 : t3;
}

} // namespace

TEST_SUITE("sharpness")
{
  TEST_CASE("concentrating profiles")
  {
    for (int n : {1, 3}) {
      for (double eps : eps_sweep()) {
        auto const phi = moser_profile(eps, 1, n, grid(n));
        CHECK(std::abs(std::pow(lp_norm(phi.profile, 2.0), 2) / moser_l2_closed_form(phi) - 1) < 0.01);
        auto const &r = grid(n)->r;
        CHECK(((r <= eps) || (r >= 1)).select(phi.profile.values, 0.0).abs().maxCoeff() == 0);
      }
    }
    MoserProfile wide;
    wide.eps = 1 - 1e-9;
    wide.n = 3;
    wide.amplitude = moser_amplitude(3);
    CHECK(moser_l2_closed_form(wide) < 1e-8);
    CHECK_THROWS_AS(moser_profile(1 - 1e-6, 1, 3, grid(3)), std::invalid_argument);
    CHECK_THROWS_AS(moser_profile(0.5, 1, 1, grid(3)), std::invalid_argument);
  }

  TEST_CASE("polynomial projection")
  {
    auto const &g = grid(3);
    auto const quad = sample(g, [](double x) { return x < 1 ? 2 - 3 * x * x : 0.0; });
    CHECK(project_out_polynomials(quad, 1).profile.values.abs().maxCoeff() < 1e-8);

    std::vector<double> sup;
    for (double eps : eps_sweep(3, 8)) {
      auto const proj = project_out_polynomials(moser_profile(eps, 1, 3, g).profile, 1);
      CHECK(proj.orthogonality <= 1e-10);
      sup.push_back(proj.projection.values.abs().maxCoeff());
    }
    CHECK(*std::max_element(sup.begin(), sup.end()) / *std::min_element(sup.begin(), sup.end()) < 1.5);
  }

  TEST_CASE("lift has unit critical seminorm")
  {
    for (int n : {1, 3}) {
      for (double eps : {0.125, 0.0009765625}) {
        auto const proj = project_out_polynomials(moser_profile(eps, 1, n, grid(n)).profile, 1);
        auto const lift = riesz_lift(proj.profile, n);
        CHECK(std::abs(sobolev_seminorm(lift.psi, 0.25 * n) - 1) < 1e-6);
      }
    }
  }

  auto lift_mass_spread(int n) -> double
  {
    std::vector<double> q;
    for (auto const &r : table(n)) {
      if (r.p == 0 && r.beta == table(n).front().beta) { q.push_back(r.l2_lift * (n * std::log(1 / r.eps) + 1)); }
    }
    return *std::max_element(q.begin(), q.end()) / *std::min_element(q.begin(), q.end());
  }

  TEST_CASE("lift L2 mass follows C / (n log(1/ε) + C), n = 3") { CHECK(lift_mass_spread(3) <= 3); }

  TEST_CASE("lift L2 mass follows C / (n log(1/ε) + C), n = 1" * doctest::may_fail())
  {
    CHECK(lift_mass_spread(1) <= 3);
  }

  TEST_CASE("plateau approaches the sharp level" * doctest::may_fail())
  {
    for (int n : {1, 3}) {
      CAPTURE(n);
      auto const &recs = table(n);
      CHECK(std::abs(recs.back().plateau - 1) <= 0.15);
    }
  }

  TEST_CASE("records are ordered and deterministic")
  {
    auto const &recs = table(3);
    for (size_t i = 1; i < recs.size(); ++i) {
      auto const &a = recs[i - 1], &b = recs[i];
      CHECK((a.beta < b.beta || (a.beta == b.beta && (a.p < b.p || (a.p == b.p && a.eps > b.eps)))));
    }
    double const b = adams_sharp_constant(3, 1.5);
    auto const again = blowup_table(3, {b, 0.9 * b}, eps_sweep(), {2, 0, 1}, 1.0, grid(3));
    REQUIRE(again.size() == recs.size());
    for (size_t i = 0; i < recs.size(); ++i) {
      CHECK(again[i].ratio == recs[i].ratio);
    }
  }

  TEST_CASE("subcritical ratios stay bounded")
  {
    for (int n : {1, 3}) {
      double const b = adams_sharp_constant(n, 0.5 * n);
      CHECK(summarize(table(n), 0.9 * b, 0).max_over_min <= 10);
    }
  }

  TEST_CASE("critical exact-growth trends")
  {
    double const b = adams_sharp_constant(3, 1.5);
    CHECK(summarize(table(3), b, 2).max_over_min <= 10);
    CHECK(summarize(table(3), b, 1).strictly_increasing);
    CHECK(summarize(table(3), b, 0).strictly_increasing);
    CHECK(summarize(table(1), adams_sharp_constant(1, 0.5), 0).strictly_increasing);
  }

  TEST_CASE("log-slope follows 1 - p/2" * doctest::may_fail())
  {
    double const b = adams_sharp_constant(3, 1.5);
    for (double p : {0.0, 1.0}) {
      CAPTURE(p);
      CHECK(std::abs(summarize(table(3), b, p, 0.0625).slope - (1 - p / 2)) <= 0.2);
    }
  }
}
