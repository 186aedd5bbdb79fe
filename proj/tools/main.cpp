#include "experiments.hpp"

#include "tml/extremals.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace tml;
using namespace tml::cli;

namespace {

// Options shared by every subcommand that builds a grid.
struct GridFlags
{
  std::optional<int>    n;
  std::optional<double> R, r_min;
  std::optional<Index>  N;
  std::string           scheme;
};

void add_grid_flags(CLI::App *sub, GridFlags &g)
{
  sub->add_option("--n", g.n, "Dimension")->envname("TML_DIM");
  sub->add_option("--R", g.R, "Truncation radius")->envname("TML_RADIUS");
  sub->add_option("--N", g.N, "Number of nodes")->envname("TML_NODES");
  sub->add_option("--scheme", g.scheme, "Grid scheme (uniform | log)")->envname("TML_SCHEME");
  sub->add_option("--r-min", g.r_min, "Smallest node of the log scheme")->envname("TML_RMIN");
}

struct Subcommand
{
  Experiment       kind;
  CLI::App        *app = nullptr;
  ExperimentConfig cfg;
  GridFlags        grid;
  std::string      lambdas, widths, eps, ps, beta_fracs;
};

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Sharp constants, extensions, rearrangements and blow-up sweeps for radial exponential inequalities", "tml"};
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "Flat key = value file with one [section] per experiment")->envname("TML_CONFIG");
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1);
  app.fallthrough();

  std::string   out = ".";
  std::uint64_t seed = 0;
  int           threads = 1;
  app.add_option("--out", out, "Output directory")->envname("TML_OUT");
  app.add_option("--seed", seed, "Random seed")->envname("TML_SEED");
  app.add_option("--threads", threads, "Worker threads for independent sweep cells")->envname("TML_THREADS");

  std::map<std::string, Subcommand> subs;
  auto make = [&](Experiment kind, std::string const &help) -> Subcommand & {
    auto &s = subs[experiment_name(kind)];
    s.kind = kind;
    s.cfg.kind = kind;
    s.app = app.add_subcommand(experiment_name(kind), help);
    return s;
  };

  make(Experiment::constants, "Tabulate the sharp constants");

  {
    auto &s = make(Experiment::verify_identities, "Check the extension energy and boundary identities");
    s.app->add_option("--max-m", s.cfg.max_m, "Largest extension order")->envname("TML_MAX_M");
  }
  {
    auto &s = make(Experiment::rearrangement_check, "Fourier rearrangement invariants on a random corpus");
    add_grid_flags(s.app, s.grid);
    s.app->add_option("--dims", s.cfg.dims, "Dimensions")->delimiter(',')->envname("TML_DIMS");
    s.app->add_option("--count", s.cfg.count, "Corpus size per dimension")->envname("TML_COUNT");
  }
  {
    auto &s = make(Experiment::eval, "Evaluate one functional on a profile");
    add_grid_flags(s.app, s.grid);
    s.app->add_option("--profile", s.cfg.profile_path, "Profile JSON (default: Gaussian)")->envname("TML_PROFILE");
    s.app->add_option("--functional", s.cfg.functional, "Functional name")->envname("TML_FUNCTIONAL");
    s.app->add_option("--beta", s.cfg.beta, "Exponent coefficient")->envname("TML_BETA");
    s.app->add_option("--p", s.cfg.p, "Exact-growth power")->envname("TML_P");
    s.app->add_option("--lambda", s.cfg.lambda, "Ground-state parameter")->envname("TML_LAMBDA");
    s.app->add_option("--s", s.cfg.s, "Seminorm order")->envname("TML_S");
    s.app->add_option("--q", s.cfg.q, "Lebesgue exponent")->envname("TML_Q");
    s.app->add_option("--width", s.cfg.width, "Gaussian width")->envname("TML_WIDTH");
    s.app->add_option("--denominator", s.cfg.denominator, "power | square")->envname("TML_DENOMINATOR");
  }
  {
    auto &s = make(Experiment::extremal, "Subcritical maximiser of the ratio functional");
    add_grid_flags(s.app, s.grid);
    s.app->add_option("--beta-frac", s.cfg.beta_frac, "beta as a fraction of the sharp constant")->envname("TML_BETA_FRAC");
    s.app->add_option("--margin", s.cfg.margin, "Required distance below the sharp constant")->envname("TML_MARGIN");
    s.app->add_option("--max-iterations", s.cfg.max_iterations)->envname("TML_MAX_ITERATIONS");
    s.app->add_option("--width", s.cfg.width, "Width of the initial Gaussian")->envname("TML_WIDTH");
  }
  {
    auto &s = make(Experiment::ground_state, "Constrained ground state and its half-space lift");
    add_grid_flags(s.app, s.grid);
    s.app->add_option("--lambdas", s.lambdas, "Comma-separated lambda values")->envname("TML_LAMBDAS");
    s.app->add_option("--widths", s.widths, "Comma-separated start widths")->envname("TML_WIDTHS");
    s.app->add_option("--memory", s.cfg.memory, "L-BFGS memory")->envname("TML_MEMORY");
  }
  {
    auto &s = make(Experiment::sharpness, "Blow-up sweep over concentrating profiles");
    add_grid_flags(s.app, s.grid);
    s.app->add_option("--eps", s.eps, "eps list, e.g. 2^-3..2^-10")->envname("TML_EPS");
    s.app->add_option("--p", s.ps, "Comma-separated powers")->envname("TML_P");
    s.app->add_option("--beta-fracs", s.beta_fracs, "Comma-separated fractions of the sharp constant")->envname("TML_BETA_FRACS");
    s.app->add_option("--radius", s.cfg.radius, "Outer radius of the annulus")->envname("TML_RADIUS_OUTER");
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::Success const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return 2;
  }

  Subcommand *chosen = nullptr;
  for (auto &[name, s] : subs) {
    if (s.app->parsed()) { chosen = &s; }
  }
  if (!chosen) { return 2; }

  try {
    ExperimentConfig cfg = chosen->cfg;
    cfg.out_dir = out;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.n = chosen->grid.n;
    cfg.R = chosen->grid.R;
    cfg.N = chosen->grid.N;
    cfg.r_min = chosen->grid.r_min;
    if (!chosen->grid.scheme.empty()) {
      try {
        cfg.scheme = parse_scheme(chosen->grid.scheme);
      } catch (std::exception const &e) {
        throw ValidationError(e.what());
      }
    }
    if (!chosen->lambdas.empty()) { cfg.lambdas = parse_double_list(chosen->lambdas); }
    if (!chosen->widths.empty()) { cfg.widths = parse_double_list(chosen->widths); }
    if (!chosen->eps.empty()) { cfg.eps = parse_eps_list(chosen->eps); }
    if (!chosen->ps.empty()) { cfg.ps = parse_double_list(chosen->ps); }
    if (!chosen->beta_fracs.empty()) { cfg.beta_fracs = parse_double_list(chosen->beta_fracs); }

    validate(cfg);
    auto const rec = run(cfg);
    std::cerr << experiment_name(cfg.kind) << ": wrote";
    for (auto const &f : rec.files) {
      std::cerr << ' ' << f;
    }
    std::cerr << " in " << rec.wall_clock << " s\n";
    for (auto const &flag : rec.flags) {
      std::cerr << "flag: " << flag << '\n';
    }
    return rec.failed_cells > 0 ? 3 : 0;
  } catch (std::invalid_argument const &e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (std::exception const &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}
