#include "tml/constants.hpp"
#include "tml/corpus.hpp"
#include "tml/extension.hpp"
#include "tml/extremals.hpp"
#include "tml/functionals.hpp"
#include "tml/rearrangement.hpp"
#include "tml/sharpness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <unistd.h>

using namespace tml;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome
{
  bool        pass;
  std::string detail;
};

auto fmt(char const *f, auto... args) -> std::string
{
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

auto rel(double a, double b) -> double { return std::abs(a - b) / std::abs(b); }

auto eps_sweep() -> std::vector<double>
{
  std::vector<double> eps;
  for (int k = 3; k <= 10; ++k) {
    eps.push_back(std::pow(2.0, -k));
  }
  return eps;
}

auto sharp_constants() -> Outcome
{
  double const e = std::max({rel(adams_sharp_constant(1, 0.5), pi), rel(adams_sharp_constant(3, 1.5), 6 * pi * pi),
                             rel(trace_sharp_constant(2), 12 * pi * pi), rel(adams_sharp_constant(2, 1), 4 * pi)});
  return {e <= 1e-12, fmt("max relative error %.2e", e)};
}

auto energy_factors() -> Outcome
{
  double e = 0;
  for (int m = 1; m <= 6; ++m) {
    e = std::max(e, std::abs(energy_factor(m) - std::tgamma(double(m)) * std::sqrt(pi) / std::tgamma(m - 0.5)));
  }
  double const e1 = std::abs(energy_factor(1) - 1), e2 = std::abs(energy_factor(2) - 2);
  return {e <= 1e-8 && e1 <= 1e-8 && e2 <= 1e-8, fmt("max |error| %.2e over m = 1..6", e)};
}

auto boundary_coefficients() -> Outcome
{
  double e = 0;
  for (int m = 1; m <= 5; ++m) {
    for (int k = 0; k <= (m - 1) / 2; ++k) {
      e = std::max(e, std::abs(boundary_coefficient_oracle(m, k) - boundary_coefficient(m, k)));
    }
    double const sign = m % 2 == 0 ? 1 : -1;
    e = std::max(e, std::abs(top_neumann_oracle(m) - sign * top_neumann_coefficient(m)));
  }
  return {e <= 1e-10, fmt("max |error| %.2e over m <= 5", e)};
}

auto harmonic_extension() -> Outcome
{
  auto const plan = make_plan<double>({1, 40, 1024, Scheme::uniform});
  auto const g = gaussian(plan);
  auto const field = extend(g, 1);
  double     err = 0;
  for (double y : {0.1, 0.5, 1.0, 2.0}) {
    for (double x : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      err = std::max(err, std::abs(field.value_at(x, y) - kernel_extension([](double r) { return std::exp(-r * r / 2); }, 1, x, y)));
    }
  }
  double const s = std::pow(sobolev_seminorm(g, 0.25), 2);
  double const de = std::abs(extension_energy(field) - s) / s;
  return {err <= 1e-3 && de <= 1e-8, fmt("kernel max error %.2e, energy relative error %.2e", err, de)};
}

auto rearrangement_invariants() -> Outcome
{
  double l2 = 0, semi = -INFINITY, l4 = INFINITY, idem = 0;
  for (int n : {1, 3}) {
    auto const plan = make_plan<double>({n, 20, 256, Scheme::uniform});
    for (auto const &u : smooth_corpus(plan, 100, 42)) {
      auto const [v, rep] = fourier_rearrange(u, 0.75);
      auto const quarter = rearrangement_report(u, v, 0.25);
      l2 = std::max(l2, std::abs(rep.delta_l2()) / rep.l2_before);
      semi = std::max({semi, rep.delta_seminorm(), quarter.delta_seminorm()});
      l4 = std::min(l4, rep.delta_l4());
      idem = std::max(idem, (fourier_rearrange(v, 0.75).first.values - v.values).abs().maxCoeff());
    }
  }
  return {l2 <= 1e-10 && semi <= 1e-8 && l4 >= -1e-8 && idem <= 1e-8,
          fmt("L2 %.1e, seminorm increase %.1e, L4 decrease %.1e, idempotence %.1e", l2, semi, -l4, idem)};
}

auto one_dimensional_blowup() -> Outcome
{
  auto const t0 = std::chrono::steady_clock::now();
  auto const grid = sharpness_grid(1);
  auto const recs = blowup_table(1, {0.9 * pi, pi}, eps_sweep(), {0}, 1.0, grid);
  auto const sub = summarize(recs, 0.9 * pi, 0), crit = summarize(recs, pi, 0);
  double const dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {sub.max_over_min <= 10 && crit.strictly_increasing && crit.final_over_initial >= 10 && dt < 60,
          fmt("sub max/min %.3f; critical increasing %s, final/initial %.3f (needs >= 10); %.1f s", sub.max_over_min,
              crit.strictly_increasing ? "yes" : "no", crit.final_over_initial, dt)};
}

auto exact_growth() -> Outcome
{
  auto const   t0 = std::chrono::steady_clock::now();
  double const b = 6 * pi * pi;
  auto const   recs = blowup_table(3, {b}, eps_sweep(), {0, 1, 2}, 1.0, sharpness_grid(3));
  auto const   p0 = summarize(recs, b, 0, 0.0625), p1 = summarize(recs, b, 1, 0.0625), p2 = summarize(recs, b, 2, 0.0625);
  double const dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool const   slopes = std::abs(p0.slope - 1) <= 0.2 && std::abs(p1.slope - 0.5) <= 0.2;
  return {p2.max_over_min <= 10 && p1.strictly_increasing && slopes && dt < 120,
          fmt("p=2 max/min %.3f; p=1 increasing %s; slopes %.3f (p=0, target 1) %.3f (p=1, target 0.5); %.1f s", p2.max_over_min,
              p1.strictly_increasing ? "yes" : "no", p0.slope, p1.slope, dt)};
}

auto hardy_rellich_margins() -> Outcome
{
  double worst = INFINITY, equality = 0;
  for (int n : {2, 3, 4}) {
    auto const plan = make_plan<double>({n, 20, 256, Scheme::uniform});
    for (auto const &u : smooth_corpus(plan, 50, 11)) {
      auto const hr = hardy_rellich(u);
      worst = std::min(worst, hr.margin());
      if (n == 2) { equality = std::max(equality, std::abs(hr.margin())); }
    }
  }
  return {worst >= -1e-8 && equality <= 1e-6, fmt("min margin %.2e, n=2 equality gap %.2e", worst, equality)};
}

auto radial_reduction_identities() -> Outcome
{
  double l2 = 0, chain = -INFINITY;
  for (int n : {2, 3, 4}) {
    auto const            plan = make_plan<double>({n, 20, 256, Scheme::uniform});
    RadialReduction const rr(plan);
    for (auto const &u : smooth_corpus(plan, 50, 11)) {
      auto const [a, b] = rr.l2_identity(u);
      l2 = std::max(l2, std::abs(a - b) / b);
      chain = std::max(chain, rr.gradient_energy(u) - std::pow(sobolev_seminorm(u, 0.25 * n), 2));
    }
  }
  return {l2 <= 1e-6 && chain <= 1e-6, fmt("L2 identity relative error %.2e, max chain excess %.2e", l2, chain)};
}

auto ground_states() -> Outcome
{
  auto const  t0 = std::chrono::steady_clock::now();
  bool        ok = true;
  std::string detail;
  for (double lambda : {0.25, 0.5, 0.75}) {
    auto const res = ground_state(lambda);
    auto const lift = lift_ground_state(res);
    bool const good = res.residual <= 1e-6 * res.scale && res.A > 0 && res.A < 0.5 && res.spread <= 0.01 && res.starts.size() == 3 &&
                      std::abs(lift.I - lift.J) <= 1e-8 && lift.neumann <= 1e-8;
    ok = ok && good;
    detail += fmt("A(%.2f)=%.6f spread %.1e |I-J| %.1e; ", lambda, res.A, res.spread, std::abs(lift.I - lift.J));
  }
  double const dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok && dt < 300, detail + fmt("%.1f s", dt)};
}

auto subcritical_maximiser() -> Outcome
{
  auto const   plan = make_plan<double>({3, 20, 512, Scheme::uniform});
  double const beta = 0.9 * 6 * pi * pi;
  auto const   res = maximize_subcritical(3, beta, gaussian(plan));
  bool         monotone = true;
  for (size_t i = 1; i < res.trace.size(); ++i) {
    monotone = monotone && res.trace[i] >= res.trace[i - 1] * (1 - 1e-12);
  }
  double const semi = std::abs(sobolev_seminorm(res.profile, 0.75) - 1);
  double const fixed = (fourier_rearrange(res.profile).first.values - res.profile.values).abs().maxCoeff();
  return {res.F > beta && monotone && semi <= 1e-8 && fixed <= 1e-6,
          fmt("F %.4f vs beta %.4f, monotone %s, seminorm error %.1e, rearrangement residual %.1e", res.F, beta, monotone ? "yes" : "no",
              semi, fixed)};
}

auto slurp(fs::path const &p) -> std::string
{
  std::ifstream     in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

auto determinism(std::string const &cli) -> Outcome
{
  auto const root = fs::temp_directory_path() / ("tml-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  int compared = 0;
  for (std::string const kind : {"constants", "verify-identities", "rearrangement-check", "eval", "extremal", "ground-state", "sharpness"}) {
    fs::path const a = root / (kind + "-a"), b = root / (kind + "-b");
    for (auto const &[dir, threads] : {std::pair{a, 1}, std::pair{b, 4}}) {
      std::string const cmd = "\"" + cli + "\" " + kind + " --seed 7 --threads " + std::to_string(threads) + " --out \"" + dir.string() + "\" 2>/dev/null";
      if (std::system(cmd.c_str()) != 0) { return {false, kind + ": command failed"}; }
    }
    for (auto const &entry : fs::directory_iterator(a)) {
      auto const name = entry.path().filename();
      if (!fs::exists(b / name) || slurp(a / name) != slurp(b / name)) { return {false, kind + ": " + name.string() + " differs"}; }
      ++compared;
    }
  }
  fs::remove_all(root);
  return {true, fmt("%d files byte-identical across runs (1 and 4 threads)", compared)};
}

} // namespace

int main(int argc, char **argv)
{
  std::string const cli = argc > 1 ? argv[1] : "tml";
  std::vector<std::pair<std::string, std::function<Outcome()>>> const criteria{
    {"sharp constants", sharp_constants},
    {"energy-factor identity", energy_factors},
    {"boundary-condition coefficients", boundary_coefficients},
    {"harmonic extension cross-check", harmonic_extension},
    {"Fourier rearrangement invariants", rearrangement_invariants},
    {"n=1 subcritical boundedness vs blow-up", one_dimensional_blowup},
    {"n=3 exact-growth power sharpness", exact_growth},
    {"Hardy-Rellich margin", hardy_rellich_margins},
    {"radial reduction", radial_reduction_identities},
    {"ground state", ground_states},
    {"subcritical maximiser", subcritical_maximiser},
    {"determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (std::exception const &e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::printf("%s %2zu %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
