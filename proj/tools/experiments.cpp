#include "experiments.hpp"

#include "tml/constants.hpp"
#include "tml/corpus.hpp"
#include "tml/extension.hpp"
#include "tml/extremals.hpp"
#include "tml/functionals.hpp"
#include "tml/profile_io.hpp"
#include "tml/rearrangement.hpp"
#include "tml/sharpness.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

namespace tml::cli {

using json = nlohmann::json;

auto experiment_name(Experiment e) -> std::string
{
  switch (e) {
  case Experiment::constants: return "constants";
  case Experiment::verify_identities: return "verify-identities";
  case Experiment::rearrangement_check: return "rearrangement-check";
  case Experiment::eval: return "eval";
  case Experiment::extremal: return "extremal";
  case Experiment::ground_state: return "ground-state";
  case Experiment::sharpness: return "sharpness";
  }
  return "unknown";
}

namespace {

auto trim(std::string s) -> std::string
{
  auto const b = s.find_first_not_of(" \t");
  auto const e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

auto split(std::string const &text, char sep) -> std::vector<std::string>
{
  std::vector<std::string> out;
  std::stringstream        ss(text);
  std::string              item;
  while (std::getline(ss, item, sep)) {
    out.push_back(trim(item));
  }
  return out;
}

auto parse_number(std::string const &tok) -> double
{
  double      v = 0;
  auto const *end = tok.data() + tok.size();
  auto const  res = std::from_chars(tok.data(), end, v);
  if (tok.empty() || res.ec != std::errc() || res.ptr != end) { throw ValidationError("cannot parse number '" + tok + "'"); }
  return v;
}

// "2^k" with integer k, or a plain number
auto parse_value(std::string const &tok, int *exponent = nullptr) -> double
{
  if (tok.rfind("2^", 0) == 0) {
    double const k = parse_number(tok.substr(2));
    if (exponent) {
      if (k != std::round(k)) { throw ValidationError("range endpoints must be integer powers of two: '" + tok + "'"); }
      *exponent = int(k);
    }
    return std::pow(2.0, k);
  }
  if (exponent) { throw ValidationError("range endpoints must be written as 2^k: '" + tok + "'"); }
  return parse_number(tok);
}

template <typename F> void parallel_for(Index count, int threads, F &&body)
{
  if (threads <= 1 || count <= 1) {
    for (Index i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<Index>       next{0};
  std::vector<std::thread> pool;
  std::exception_ptr       error;
  std::mutex               error_lock;
  for (int t = 0; t < std::min<Index>(threads, count); ++t) {
    pool.emplace_back([&] {
      for (Index i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_lock);
          if (!error) { error = std::current_exception(); }
        }
      }
    });
  }
  for (auto &th : pool) {
    th.join();
  }
  if (error) { std::rethrow_exception(error); }
}

auto default_grid(Experiment kind, int n) -> GridSpec
{
  switch (kind) {
  case Experiment::rearrangement_check: return {n, 20, 256, Scheme::uniform};
  case Experiment::extremal: return {n, 20, 512, Scheme::uniform};
  case Experiment::ground_state: return {n, 40, 256, Scheme::uniform};
  case Experiment::sharpness: return {n, 40, 4097, Scheme::log};
  default: return {n, 40, 512, Scheme::uniform};
  }
}

auto default_eps() -> std::vector<double>
{
  std::vector<double> eps;
  for (int k = 3; k <= 10; ++k) {
    eps.push_back(std::pow(2.0, -k));
  }
  return eps;
}

void check_grid(GridSpec const &g)
{
  if (g.n < 1) { throw ValidationError("grid: n must be >= 1"); }
  if (!(g.R > 0) || !std::isfinite(g.R)) { throw ValidationError("grid: R must be positive"); }
  if (g.N < 16) { throw ValidationError("grid: N must be >= 16"); }
  if (g.scheme == Scheme::log && !(g.r_min >= 0 && g.r_min < g.R)) { throw ValidationError("grid: r_min must lie in [0, R)"); }
}

auto known_functionals() -> std::vector<std::string> const &
{
  static std::vector<std::string> const names{"tm_ratio",       "exact_growth_ratio", "G_lambda",      "J_lambda",
                                              "I_lambda",       "seminorm",           "lp_norm",       "hardy_rellich_margin",
                                              "radial_gradient", "rearrangement_comparison", "nehari_scale"};
  return names;
}

auto csv_row(std::vector<double> const &v) -> std::string
{
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) { s += ','; }
    s += format_double(v[i]);
  }
  return s + '\n';
}

// Files are assembled in memory and only written once the experiment has completed.
struct Outputs
{
  std::vector<std::pair<std::string, std::string>> files;
  void add(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
};

auto summary_json(SweepSummary const &s) -> json
{
  return {{"max_over_min", s.max_over_min},
          {"final_over_initial", s.final_over_initial},
          {"strictly_increasing", s.strictly_increasing},
          {"log_slope", s.slope},
          {"count", s.count}};
}

void run_constants(ExperimentConfig const &, ResultRecord &rec, Outputs &out)
{
  std::string csv = "n,m,beta\n";
  json        adams = json::array();
  for (auto const &[n, m] : std::vector<std::pair<int, double>>{{1, 0.5}, {2, 1}, {3, 1.5}, {4, 2}, {5, 2.5}, {6, 3}}) {
    double const b = adams_sharp_constant(n, m);
    csv += std::to_string(n) + ',' + format_double(m) + ',' + format_double(b) + '\n';
    adams.push_back({{"n", n}, {"m", m}, {"beta", b}});
  }
  std::string tcsv = "m,energy_ratio,trace_constant\n";
  json        trace = json::array();
  for (int m = 1; m <= 4; ++m) {
    tcsv += std::to_string(m) + ',' + format_double(trace_energy_ratio(m)) + ',' + format_double(trace_sharp_constant(m)) + '\n';
    trace.push_back({{"m", m}, {"energy_ratio", trace_energy_ratio(m)}, {"trace_constant", trace_sharp_constant(m)}});
  }
  json growth = json::array();
  for (int n = 2; n <= 6; ++n) {
    growth.push_back({{"n", n}, {"A_n", exact_growth_An(n)}, {"reduction_constant", reduction_constant(n)}});
  }
  out.add("constants.csv", csv);
  out.add("trace_constants.csv", tcsv);
  rec.outputs = {{"adams", adams}, {"trace", trace}, {"exact_growth", growth}};
}

void run_identities(ExperimentConfig const &cfg, ResultRecord &rec, Outputs &out)
{
  std::string csv = "m,energy_factor,gamma_formula,abs_error,boundary_max_error,top_neumann_error\n";
  json        rows = json::array();
  for (int m = 1; m <= cfg.max_m; ++m) {
    double const ef = energy_factor(m), gf = trace_energy_ratio(m);
    double       bmax = 0;
    for (int k = 0; k <= (m - 1) / 2; ++k) {
      bmax = std::max(bmax, std::abs(boundary_coefficient_oracle(m, k) - boundary_coefficient(m, k)));
    }
    double const sign = (m % 2 == 0) ? 1.0 : -1.0;
    double const top = std::abs(top_neumann_oracle(m) - sign * top_neumann_coefficient(m));
    csv += std::to_string(m) + ',' + csv_row({ef, gf, std::abs(ef - gf), bmax, top});
    rows.push_back({{"m", m}, {"energy_factor", ef}, {"gamma_formula", gf}, {"abs_error", std::abs(ef - gf)},
                    {"boundary_max_error", bmax}, {"top_neumann_error", top}});
  }
  out.add("identities.csv", csv);
  rec.outputs = {{"identities", rows}};
}

void run_rearrangement(ExperimentConfig const &cfg, ResultRecord &rec, Outputs &out)
{
  std::string csv = "n,id,d_l2,d_seminorm_1_4,d_seminorm_3_4,d_l4,d_l3,idempotence\n";
  json        summaries = json::array();
  for (int n : cfg.dims) {
    auto const plan = make_plan<double>(resolve_grid(cfg, n));
    auto const corpus = smooth_corpus(plan, cfg.count, cfg.seed);
    std::vector<std::array<double, 6>> rows(corpus.size());
    parallel_for(Index(corpus.size()), cfg.threads, [&](Index i) {
      auto const [v, rep] = fourier_rearrange(corpus[i], 0.75);
      auto const quarter = rearrangement_report(corpus[i], v, 0.25);
      auto const again = fourier_rearrange(v, 0.75).first;
      rows[i] = {rep.delta_l2(), quarter.delta_seminorm(), rep.delta_seminorm(), rep.delta_l4(), rep.delta_l3(),
                 (again.values - v.values).abs().maxCoeff()};
    });
    double l2 = 0, semi = -INFINITY, l4 = INFINITY, l3 = INFINITY, idem = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      auto const &r = rows[i];
      csv += std::to_string(n) + ',' + std::to_string(i) + ',' + csv_row({r[0], r[1], r[2], r[3], r[4], r[5]});
      l2 = std::max(l2, std::abs(r[0]));
      semi = std::max({semi, r[1], r[2]});
      l4 = std::min(l4, r[3]);
      l3 = std::min(l3, r[4]);
      idem = std::max(idem, r[5]);
    }
    summaries.push_back({{"n", n},
                         {"count", cfg.count},
                         {"max_abs_d_l2", l2},
                         {"max_d_seminorm", semi},
                         {"min_d_l4", l4},
                         {"min_d_l3", l3},
                         {"max_idempotence", idem}});
  }
  out.add("rearrangement.csv", csv);
  rec.outputs = {{"summaries", summaries}};
}

void run_eval(ExperimentConfig const &cfg, ResultRecord &rec, Outputs &)
{
  RadialProfile<double> u;
  if (!cfg.profile_path.empty()) {
    std::ifstream in(cfg.profile_path);
    if (!in) { throw ValidationError("eval: cannot read profile '" + cfg.profile_path + "'"); }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      u = profile_from_json(ss.str());
    } catch (nlohmann::json::exception const &e) {
      throw ValidationError(std::string("eval: malformed profile file: ") + e.what());
    }
  } else {
    u = gaussian(make_plan<double>(resolve_grid(cfg, cfg.n.value_or(3))), cfg.width);
  }
  auto const d = cfg.denominator == "square" ? GrowthDenominator::one_plus_sq : GrowthDenominator::power;
  json       params;
  double     value = 0;
  bool       overflow = false;
  auto       take = [&](FunctionalValue const &v) {
    value = v.value;
    overflow = v.overflow;
  };
  std::string const &f = cfg.functional;
  if (f == "tm_ratio") {
    params = {{"beta", cfg.beta}};
    take(tm_ratio(u, cfg.beta));
  } else if (f == "exact_growth_ratio") {
    params = {{"beta", cfg.beta}, {"p", cfg.p}, {"denominator", cfg.denominator}};
    take(exact_growth_ratio(u, cfg.beta, cfg.p, d));
  } else if (f == "G_lambda") {
    params = {{"lambda", cfg.lambda}};
    value = G_lambda(u, cfg.lambda);
  } else if (f == "J_lambda") {
    params = {{"lambda", cfg.lambda}};
    value = J_lambda(u, cfg.lambda);
  } else if (f == "I_lambda") {
    params = {{"lambda", cfg.lambda}};
    value = i_lambda_via_trace(u, cfg.lambda);
  } else if (f == "seminorm") {
    params = {{"s", cfg.s}};
    value = sobolev_seminorm(u, cfg.s);
  } else if (f == "lp_norm") {
    params = {{"q", cfg.q}};
    value = lp_norm(u, cfg.q);
  } else if (f == "hardy_rellich_margin") {
    value = hardy_rellich_margin(u, u.dim());
  } else if (f == "radial_gradient") {
    value = RadialReduction(u.plan).gradient_energy(u);
  } else if (f == "rearrangement_comparison") {
    params = {{"beta", cfg.beta}};
    auto const c = rearrangement_comparison(u, cfg.beta);
    value = c.rhs - c.lhs;
    overflow = c.overflow;
    rec.outputs["lhs"] = c.lhs;
    rec.outputs["rhs"] = c.rhs;
  } else if (f == "nehari_scale") {
    params = {{"lambda", cfg.lambda}};
    value = nehari_scale(u, cfg.lambda);
  }
  rec.outputs["name"] = f;
  rec.outputs["params"] = params;
  rec.outputs["value"] = value;
  rec.outputs["overflow"] = overflow;
  if (overflow) { rec.flags.push_back("overflow"); }
}

void run_extremal(ExperimentConfig const &cfg, ResultRecord &rec, Outputs &out)
{
  int const  n = cfg.n.value_or(3);
  auto const plan = make_plan<double>(resolve_grid(cfg, n));
  double const beta = cfg.beta_frac * adams_sharp_constant(n, 0.5 * n);
  MaximizerOptions opts;
  opts.margin = cfg.margin;
  opts.max_iterations = cfg.max_iterations;
  opts.seed = cfg.seed;
  auto const res = maximize_subcritical(n, beta, gaussian(plan, cfg.width), opts);
  rec.outputs = {{"beta", res.beta},
                 {"beta_frac", cfg.beta_frac},
                 {"F", res.F},
                 {"F_initial", res.F_initial},
                 {"euler_lagrange_residual", res.el_residual},
                 {"iterations", res.iterations},
                 {"overflow", res.overflow},
                 {"seed", res.seed},
                 {"trace", res.trace}};
  if (res.overflow) { rec.flags.push_back("overflow"); }
  std::stringstream ss;
  write_profile_csv(res.profile, ss);
  out.add("extremal_profile.csv", ss.str());
  Sweep sw{{"step", "F"}, {"ascent"}, {{}}};
  for (size_t i = 0; i < res.trace.size(); ++i) {
    sw.blocks[0].push_back({double(i), res.trace[i]});
  }
  rec.sweep = sw;
}

void run_ground_state(ExperimentConfig const &cfg, ResultRecord &rec, Outputs &out)
{
  GroundStateOptions opts;
  opts.grid = resolve_grid(cfg, 3);
  opts.widths = cfg.widths;
  opts.memory = cfg.memory;
  opts.seed = cfg.seed;
  std::vector<double> lambdas = cfg.lambdas;
  std::sort(lambdas.begin(), lambdas.end());
  json  results = json::array();
  Sweep sw{{"lambda", "A"}, {"ground_state"}, {{}}};
  for (double lambda : lambdas) {
    GroundStateResult res;
    try {
      res = ground_state(lambda, opts);
    } catch (NehariFailure const &e) {
      results.push_back({{"lambda", lambda}, {"failed", true}, {"error", e.what()}});
      rec.failed_cells += 1;
      continue;
    }
    auto const lift = lift_ground_state(res);
    json       starts = json::array();
    for (auto const &s : res.starts) {
      starts.push_back({{"width", s.width}, {"A", s.A}, {"residual", s.residual}, {"iterations", s.iterations}, {"ok", s.ok}});
    }
    results.push_back({{"lambda", lambda},
                       {"A", res.A},
                       {"m_lambda", res.m_lambda},
                       {"residual", res.residual},
                       {"scale", res.scale},
                       {"spread", res.spread},
                       {"starts", starts},
                       {"I_lift", lift.I},
                       {"J", lift.J},
                       {"bulk_energy", lift.bulk},
                       {"seminorm_sq", lift.seminorm_sq},
                       {"neumann_max", lift.neumann},
                       {"seed", res.seed},
                       {"failed", false}});
    std::stringstream ss;
    write_profile_csv(res.profile, ss);
    out.add("ground_state_lambda_" + format_double(lambda) + ".csv", ss.str());
    sw.blocks[0].push_back({lambda, res.A});
  }
  if (rec.failed_cells) { rec.flags.push_back("cell_failure"); }
  rec.outputs = {{"results", results}};
  rec.sweep = sw;
}

void run_sharpness(ExperimentConfig const &cfg, ResultRecord &rec, Outputs &out)
{
  int const    n = cfg.n.value_or(3);
  auto const   plan = make_plan<double>(resolve_grid(cfg, n));
  double const sharp = adams_sharp_constant(n, 0.5 * n);
  std::vector<double> betas;
  for (double f : cfg.beta_fracs) {
    betas.push_back(f * sharp);
  }
  std::vector<double> eps = cfg.eps.empty() ? default_eps() : cfg.eps;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());

  std::vector<std::vector<BlowupRecord>> cells(eps.size());
  std::vector<std::string>               errors(eps.size());
  parallel_for(Index(eps.size()), cfg.threads, [&](Index k) {
    try {
      cells[k] = blowup_table(n, betas, {eps[k]}, cfg.ps, cfg.radius, plan);
    } catch (std::exception const &e) {
      errors[k] = e.what();
    }
  });
  std::vector<BlowupRecord> records;
  std::vector<std::pair<double, std::string>> failed; // ε, message
  for (size_t k = 0; k < eps.size(); ++k) {
    if (!errors[k].empty()) {
      failed.emplace_back(eps[k], errors[k]);
      for (double b : betas) {
        for (double p : cfg.ps) {
          records.push_back({n, b, eps[k], p, std::nan(""), false, std::nan(""), std::nan("")});
        }
      }
      continue;
    }
    records.insert(records.end(), cells[k].begin(), cells[k].end());
  }
  auto is_failed = [&](double e) {
    return std::any_of(failed.begin(), failed.end(), [&](auto const &f) { return f.first == e; });
  };
  std::stable_sort(records.begin(), records.end(), [](auto const &a, auto const &b) {
    if (a.beta != b.beta) { return a.beta < b.beta; }
    if (a.p != b.p) { return a.p < b.p; }
    return a.eps > b.eps;
  });

  std::string csv = "n,beta,eps,p,ratio,overflow,plateau,l2_lift,failed\n";
  Sweep       sw{{"eps", "ratio"}, {}, {}};
  json        summaries = json::array();
  for (auto const &r : records) {
    csv += std::to_string(r.n) + ',' + format_double(r.beta) + ',' + format_double(r.eps) + ',' + format_double(r.p) + ',' +
           format_double(r.ratio) + ',' + (r.overflow ? "1" : "0") + ',' + format_double(r.plateau) + ',' + format_double(r.l2_lift) + ',' +
           (is_failed(r.eps) ? "1" : "0") + '\n';
    if (r.overflow && std::find(rec.flags.begin(), rec.flags.end(), "overflow") == rec.flags.end()) { rec.flags.push_back("overflow"); }
  }
  std::vector<double> ps = cfg.ps;
  std::sort(ps.begin(), ps.end());
  for (double b : betas) {
    for (double p : ps) {
      sw.labels.push_back("beta=" + format_double(b) + " p=" + format_double(p));
      std::vector<std::vector<double>> block;
      for (auto const &r : records) {
        if (r.beta == b && r.p == p && !is_failed(r.eps)) { block.push_back({r.eps, r.ratio}); }
      }
      sw.blocks.push_back(block);
      summaries.push_back({{"beta", b}, {"beta_frac", b / sharp}, {"p", p}, {"summary", summary_json(summarize(records, b, p, 0.0625))}});
    }
  }
  out.add("sharpness.csv", csv);
  json fails = json::array();
  for (auto const &[e, msg] : failed) {
    fails.push_back({{"eps", e}, {"error", msg}});
  }
  rec.failed_cells = Index(failed.size());
  if (!failed.empty()) { rec.flags.push_back("cell_failure"); }
  rec.outputs = {{"n", n}, {"sharp_constant", sharp}, {"summaries", summaries}, {"failed_cells", fails}};
  rec.sweep = sw;
}

} // namespace

auto resolve_grid(ExperimentConfig const &cfg, int n) -> GridSpec
{
  GridSpec g = default_grid(cfg.kind, n);
  if (cfg.R) { g.R = *cfg.R; }
  if (cfg.N) { g.N = *cfg.N; }
  if (cfg.scheme) { g.scheme = *cfg.scheme; }
  if (cfg.r_min) { g.r_min = *cfg.r_min; }
  return g;
}

void validate(ExperimentConfig const &cfg)
{
  if (cfg.threads < 1) { throw ValidationError("threads must be >= 1"); }
  if (cfg.n && *cfg.n < 1) { throw ValidationError("n must be >= 1"); }
  auto grid = [&](int n) { check_grid(resolve_grid(cfg, n)); };
  auto unit_open = [](double x, char const *what) {
    if (!(x > 0 && x < 1)) { throw ValidationError(std::string(what) + " must lie in (0, 1)"); }
  };
  switch (cfg.kind) {
  case Experiment::constants: break;
  case Experiment::verify_identities:
    if (cfg.max_m < 1 || cfg.max_m > 12) { throw ValidationError("max-m must lie in 1..12"); }
    break;
  case Experiment::rearrangement_check:
    if (cfg.dims.empty() || cfg.count < 1) { throw ValidationError("rearrangement-check needs dimensions and a positive count"); }
    for (int n : cfg.dims) {
      if (n < 1) { throw ValidationError("dimensions must be >= 1"); }
      grid(n);
    }
    break;
  case Experiment::eval: {
    auto const &names = known_functionals();
    if (std::find(names.begin(), names.end(), cfg.functional) == names.end()) { throw ValidationError("unknown functional '" + cfg.functional + "'"); }
    if (cfg.denominator != "power" && cfg.denominator != "square") { throw ValidationError("denominator must be 'power' or 'square'"); }
    if (cfg.p < 0 || cfg.s < 0 || cfg.q < 1 || !(cfg.width > 0)) { throw ValidationError("eval: parameter out of range"); }
    if (cfg.functional.find("lambda") != std::string::npos || cfg.functional == "nehari_scale") { unit_open(cfg.lambda, "lambda"); }
    if (cfg.profile_path.empty()) {
      grid(cfg.n.value_or(3));
    } else if (!std::filesystem::exists(cfg.profile_path)) {
      throw ValidationError("profile file '" + cfg.profile_path + "' does not exist");
    }
    break;
  }
  case Experiment::extremal:
    if (!(cfg.margin >= 0 && cfg.margin < 1)) { throw ValidationError("margin must lie in [0, 1)"); }
    if (!(cfg.beta_frac > 0) || cfg.beta_frac > 1 - cfg.margin) { throw ValidationError("beta-frac must lie in (0, 1 - margin]"); }
    if (cfg.max_iterations < 1 || !(cfg.width > 0)) { throw ValidationError("extremal: parameter out of range"); }
    grid(cfg.n.value_or(3));
    break;
  case Experiment::ground_state:
    if (cfg.n && *cfg.n != 3) { throw ValidationError("ground-state is defined for n = 3"); }
    if (cfg.lambdas.empty() || cfg.widths.empty() || cfg.memory < 0) { throw ValidationError("ground-state: parameter out of range"); }
    for (double l : cfg.lambdas) {
      unit_open(l, "lambda");
    }
    for (double w : cfg.widths) {
      if (!(w > 0)) { throw ValidationError("widths must be positive"); }
    }
    grid(3);
    break;
  case Experiment::sharpness: {
    auto const g = resolve_grid(cfg, cfg.n.value_or(3));
    check_grid(g);
    for (double e : cfg.eps) {
      unit_open(e, "eps");
    }
    for (double p : cfg.ps) {
      if (p < 0) { throw ValidationError("p must be >= 0"); }
    }
    for (double b : cfg.beta_fracs) {
      if (!(b > 0)) { throw ValidationError("beta fractions must be positive"); }
    }
    if (cfg.ps.empty() || cfg.beta_fracs.empty()) { throw ValidationError("sharpness needs p and beta lists"); }
    if (!(cfg.radius > 0) || cfg.radius > g.R) { throw ValidationError("radius must lie in (0, R]"); }
    break;
  }
  }
}

auto config_json(ExperimentConfig const &cfg) -> json
{
  json j{{"experiment", experiment_name(cfg.kind)}, {"seed", cfg.seed}};
  auto grid_json = [&](int n) {
    auto const g = resolve_grid(cfg, n);
    json       o{{"n", g.n}, {"R", g.R}, {"N", g.N}, {"scheme", scheme_name(g.scheme)}};
    if (g.scheme == Scheme::log) { o["r_min"] = g.r_min > 0 ? g.r_min : default_log_rmin(g.n); }
    return o;
  };
  switch (cfg.kind) {
  case Experiment::constants: break;
  case Experiment::verify_identities: j["max_m"] = cfg.max_m; break;
  case Experiment::rearrangement_check: {
    j["count"] = cfg.count;
    json grids = json::array();
    for (int n : cfg.dims) {
      grids.push_back(grid_json(n));
    }
    j["grids"] = grids;
    break;
  }
  case Experiment::eval:
    j["functional"] = cfg.functional;
    if (cfg.profile_path.empty()) {
      j["grid"] = grid_json(cfg.n.value_or(3));
      j["width"] = cfg.width;
    } else {
      j["profile"] = std::filesystem::path(cfg.profile_path).filename().string();
    }
    break;
  case Experiment::extremal:
    j["grid"] = grid_json(cfg.n.value_or(3));
    j["beta_frac"] = cfg.beta_frac;
    j["margin"] = cfg.margin;
    j["max_iterations"] = cfg.max_iterations;
    j["width"] = cfg.width;
    break;
  case Experiment::ground_state:
    j["grid"] = grid_json(3);
    j["lambdas"] = cfg.lambdas;
    j["widths"] = cfg.widths;
    j["memory"] = cfg.memory;
    break;
  case Experiment::sharpness:
    j["grid"] = grid_json(cfg.n.value_or(3));
    j["eps"] = cfg.eps.empty() ? default_eps() : cfg.eps;
    j["p"] = cfg.ps;
    j["beta_fracs"] = cfg.beta_fracs;
    j["radius"] = cfg.radius;
    break;
  }
  return j;
}

auto run(ExperimentConfig const &cfg) -> ResultRecord
{
  validate(cfg);
  auto const   t0 = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.config = config_json(cfg);
  Outputs out;
  switch (cfg.kind) {
  case Experiment::constants: run_constants(cfg, rec, out); break;
  case Experiment::verify_identities: run_identities(cfg, rec, out); break;
  case Experiment::rearrangement_check: run_rearrangement(cfg, rec, out); break;
  case Experiment::eval: run_eval(cfg, rec, out); break;
  case Experiment::extremal: run_extremal(cfg, rec, out); break;
  case Experiment::ground_state: run_ground_state(cfg, rec, out); break;
  case Experiment::sharpness: run_sharpness(cfg, rec, out); break;
  }
  rec.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::string const stem = experiment_name(cfg.kind);
  for (auto const &f : out.files) {
    rec.files.push_back(f.first);
  }
  if (rec.sweep) { rec.files.push_back(stem + ".dat"); }
  rec.files.push_back(stem + ".json");

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) { throw ValidationError("cannot create output directory '" + cfg.out_dir.string() + "'"); }
  auto write = [&](std::string const &name, std::string const &content) {
    std::ofstream f(cfg.out_dir / name, std::ios::binary);
    if (!f) { throw ValidationError("cannot write '" + (cfg.out_dir / name).string() + "'"); }
    f << content;
  };
  for (auto const &f : out.files) {
    write(f.first, f.second);
  }
  if (rec.sweep) { emit_plot_data(rec, cfg.out_dir / (stem + ".dat")); }
  json const doc{{"tool", rec.version}, {"config", rec.config}, {"outputs", rec.outputs}, {"flags", rec.flags}, {"files", rec.files}};
  write(stem + ".json", doc.dump(2) + "\n");
  return rec;
}

void emit_plot_data(ResultRecord const &record, std::filesystem::path const &target)
{
  if (!record.sweep || record.sweep->blocks.empty()) { throw std::invalid_argument("emit_plot_data: record holds no sweep"); }
  auto const &sw = *record.sweep;
  std::string text = "#";
  for (auto const &c : sw.columns) {
    text += ' ' + c;
  }
  text += '\n';
  for (size_t b = 0; b < sw.blocks.size(); ++b) {
    if (b) { text += "\n\n"; }
    if (b < sw.labels.size() && sw.blocks.size() > 1) { text += "# " + sw.labels[b] + '\n'; }
    for (auto const &row : sw.blocks[b]) {
      if (row.size() != sw.columns.size()) { throw std::logic_error("emit_plot_data: row arity differs from the header"); }
      for (size_t c = 0; c < row.size(); ++c) {
        text += (c ? " " : "") + format_double(row[c]);
      }
      text += '\n';
    }
  }
  std::ofstream f(target, std::ios::binary);
  if (!f) { throw std::runtime_error("emit_plot_data: cannot write '" + target.string() + "'"); }
  f << text;
}

auto parse_double_list(std::string const &text) -> std::vector<double>
{
  std::vector<double> out;
  for (auto const &tok : split(text, ',')) {
    out.push_back(parse_value(tok));
  }
  if (out.empty()) { throw ValidationError("empty list"); }
  return out;
}

auto parse_eps_list(std::string const &text) -> std::vector<double>
{
  std::vector<double> out;
  for (auto const &tok : split(text, ',')) {
    auto const dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_value(tok));
      continue;
    }
    int a = 0, b = 0;
    parse_value(trim(tok.substr(0, dots)), &a);
    parse_value(trim(tok.substr(dots + 2)), &b);
    int const step = a <= b ? 1 : -1;
    for (int k = a;; k += step) {
      out.push_back(std::pow(2.0, k));
      if (k == b) { break; }
    }
  }
  if (out.empty()) { throw ValidationError("empty eps list"); }
  return out;
}

} // namespace tml::cli
