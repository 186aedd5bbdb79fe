#include "tml/extremals.hpp"
#include "tml/constants.hpp"
#include "tml/corpus.hpp"
#include "tml/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace tml {

namespace {
constexpr double beta3 = 12 * pi_v<double> * pi_v<double>;
constexpr double inf = std::numeric_limits<double>::infinity();
} // namespace

auto normalize_critical(RadialProfile<double> const &u) -> NormalizedProfile
{
  double const semi = sobolev_seminorm(u, 0.25 * u.dim());
  if (!(semi > 0)) { throw std::invalid_argument("normalize_critical: zero profile"); }
  NormalizedProfile out{u, 1 / semi, 1};
  out.profile.values /= semi;
  out.dilation = std::pow(lp_norm(out.profile, 2.0), 2.0 / u.dim());
  if (std::abs(out.dilation - 1) > 1e-14) { out.profile = dilate(out.profile, out.dilation); }
  return out;
}

auto maximize_subcritical(int n, double beta, RadialProfile<double> const &init, MaximizerOptions const &opts) -> MaximizerResult
{
  if (init.dim() != n) { throw std::invalid_argument("maximize_subcritical: profile dimension does not match n"); }
  double const sharp = adams_sharp_constant(n, 0.5 * n);
  if (!(beta > 0) || beta > (1 - opts.margin) * sharp) {
    throw std::invalid_argument("maximize_subcritical: beta must stay below the sharp constant by the configured margin");
  }
  auto const    &p = *init.plan;
  auto const    &M = p.inverse();
  Eigen::ArrayXd const K = p.w_hat * p.rho.pow(double(n));
  Eigen::ArrayXd const P2 = 1 / (p.w_hat * (1 + p.rho.pow(double(n))));

  MaximizerResult res;
  res.beta = beta;
  res.seed = opts.seed;

  Eigen::ArrayXd fh = transform(normalize_critical(init).profile).values;
  auto           normalize = [&](Eigen::ArrayXd &f) { f /= std::sqrt((K * f.square()).sum()); };
  auto           profile = [&](Eigen::ArrayXd const &f) { return RadialProfile<double>{init.plan, (M * f.matrix()).array()}; };
  auto           evaluate_F = [&](Eigen::ArrayXd const &f) {
    auto const v = tm_ratio(profile(f), beta);
    return v.overflow ? inf : v.value;
  };
  // ∂F/∂f̂ together with the constraint direction, in frequency coordinates.
  auto gradient = [&](Eigen::ArrayXd const &f) -> Eigen::ArrayXd {
    auto const           u = profile(f);
    auto const           num = exp_integral(u, beta);
    double const         D = (p.w * u.values.square()).sum();
    Eigen::ArrayXd const e = (beta * u.values.square()).min(700.0).exp();
    Eigen::ArrayXd const gu = p.w * 2 * u.values * (beta * e * D - num.numerator) / (D * D);
    return (M.transpose() * gu.matrix()).array();
  };

  normalize(fh);
  double F = evaluate_F(fh);
  if (!std::isfinite(F)) { throw std::runtime_error("maximize_subcritical: initial profile overflows the exponent clamp"); }
  res.F_initial = F;
  res.trace.push_back(F);
  double step = 1;
  int    it = 0;
  for (; it < opts.max_iterations; ++it) {
    // gradient of f̂ ↦ F(f̂ / ‖f̂‖) at unit seminorm
    Eigen::ArrayXd const g = gradient(fh);
    Eigen::ArrayXd const d = P2 * (g - (g * fh).sum() * K * fh);
    bool                 accepted = false;
    double               Fc = F;
    Eigen::ArrayXd       cand;
    for (double t = step; t > 1e-18; t *= 0.5) {
      cand = fh + t * d;
      normalize(cand);
      Fc = evaluate_F(cand);
      if (std::isfinite(Fc) && Fc > F) {
        accepted = true;
        step = 2 * t;
        break;
      }
      if (!std::isfinite(Fc)) { res.overflow = true; }
    }
    if (!accepted) { break; }
    double const gain = (Fc - F) / F;
    fh = cand;
    F = Fc;
    res.trace.push_back(F);
    if (opts.rearrange_every > 0 && (it + 1) % opts.rearrange_every == 0) {
      auto r = schwarz_rearrange(SpectralProfile<double>{init.plan, fh}).values;
      normalize(r);
      double const Fr = evaluate_F(r);
      if (std::isfinite(Fr) && Fr >= F - 1e-12 * F) {
        fh = r;
        F = Fr;
        res.trace.push_back(F);
      }
    }
    if (gain < opts.tolerance) { break; }
  }
  res.iterations = it;

  auto r = schwarz_rearrange(SpectralProfile<double>{init.plan, fh}).values;
  normalize(r);
  double const Fr = evaluate_F(r);
  if (std::isfinite(Fr) && Fr >= F - 1e-12 * F) {
    fh = r;
    F = Fr;
    res.trace.push_back(F);
  }
  res.F = F;
  res.profile = profile(fh);

  Eigen::ArrayXd const g = gradient(fh);
  Eigen::ArrayXd const c = 2 * K * fh;
  double const         mu = (P2 * g * c).sum() / (P2 * c * c).sum();
  res.el_residual = std::sqrt((P2 * (g - mu * c).square()).sum() / (P2 * g.square()).sum());
  return res;
}

namespace {
// h(s) / s² = (1 - λ)‖u‖² - ∫ g_λ(s u) / s², strictly decreasing in s
auto nehari_reduced(Eigen::ArrayXd const &w, Eigen::ArrayXd const &u, double L, double lambda, double s) -> double
{
  double sum = 0;
  for (Index i = 0; i < u.size(); ++i) {
    sum += w[i] * g_lambda(s * u[i], lambda);
  }
  return (1 - lambda) * L - sum / (s * s);
}
} // namespace

auto nehari_scale(RadialProfile<double> const &u, double lambda) -> double
{
  if (!(lambda > 0 && lambda < 1)) { throw std::invalid_argument("nehari_scale: lambda must lie in (0, 1)"); }
  if (u.dim() != 3) { throw std::invalid_argument("nehari_scale: defined on three-dimensional profiles"); }
  double const umax = u.values.abs().maxCoeff();
  if (!(umax > 0)) { throw std::invalid_argument("nehari_scale: zero profile"); }
  auto const  &w = u.plan->w;
  double const L = (w * u.values.square()).sum();
  double const s_clamp = std::sqrt(700.0 / beta3) / umax;
  auto         phi = [&](double s) { return nehari_reduced(w, u.values, L, lambda, s); };

  double lo = 1e-6, hi = 1;
  while (!(phi(lo) > 0)) {
    lo *= 0.5;
    if (lo < 1e-300) { throw NehariFailure("nehari_scale: h has no positive region"); }
  }
  if (hi > s_clamp) { hi = s_clamp; }
  while (phi(hi) > 0) {
    if (hi >= s_clamp) { throw NehariFailure("nehari_scale: no sign change before the exponent clamp"); }
    lo = hi;
    hi = std::min(2 * hi, s_clamp);
  }
  while (true) {
    double const mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) { break; }
    (phi(mid) > 0 ? lo : hi) = mid;
  }
  return std::abs(phi(lo)) <= std::abs(phi(hi)) ? lo : hi;
}

namespace {
struct GroundStateProblem
{
  PlanPtr<double> plan;
  double          lambda, kappa;
  Eigen::ArrayXd  P, K3;

  struct Eval
  {
    double         f = inf, s0 = 0, S = 0;
    Eigen::ArrayXd grad;
  };

  auto profile(Eigen::ArrayXd const &x) const -> RadialProfile<double>
  {
    return {plan, (plan->inverse() * (P * x).matrix()).array()};
  }

  auto operator()(Eigen::ArrayXd const &x) const -> Eval
  {
    auto const          &p = *plan;
    Eigen::ArrayXd const fh = P * x;
    auto const           u = profile(x);
    Eval                 e;
    double               s0;
    try {
      s0 = nehari_scale(u, lambda);
    } catch (NehariFailure const &) {
      return e;
    }
    double const         S = (K3 * fh.square()).sum();
    double const         L = (p.w * u.values.square()).sum();
    Eigen::ArrayXd const v = s0 * u.values;
    Eigen::ArrayXd const em = (beta3 * v.square()).min(700.0).unaryExpr([](double y) { return std::expm1(y); });
    Eigen::ArrayXd const q = p.w * (2 * (1 - lambda) * v - 2 * lambda * v * em);
    double const         a = (q * u.values).sum();
    Eigen::ArrayXd const ds0 = -s0 * q / a;
    double const         pen = s0 * s0 * L - 1;
    e.f = s0 * s0 * S + kappa * pen * pen;
    e.s0 = s0;
    e.S = S;
    Eigen::ArrayXd const gu = (2 * s0 * S + 4 * kappa * pen * s0 * L) * ds0 + 4 * kappa * pen * s0 * s0 * p.w * u.values;
    Eigen::ArrayXd const gf = (p.inverse().transpose() * gu.matrix()).array() + 2 * s0 * s0 * K3 * fh;
    e.grad = P * gf;
    return e;
  }
};

struct Descent
{
  Eigen::ArrayXd x;
  double         f = inf;
  int            iterations = 0;
};

// Limited-memory BFGS with Armijo backtracking; memory 0 gives steepest descent.
auto lbfgs(GroundStateProblem const &prob, Eigen::ArrayXd x, int memory, int max_iterations, double tolerance) -> Descent
{
  auto                       cur = prob(x);
  std::deque<Eigen::ArrayXd> S, Y;
  std::deque<double>         R;
  int                        quiet = 0, it = 0;
  double                     first_step = 1e-2 / std::max(1e-300, std::sqrt(cur.grad.square().sum()));
  for (; it < max_iterations && std::isfinite(cur.f); ++it) {
    Eigen::ArrayXd           d = -cur.grad;
    std::vector<double>      alpha(S.size());
    for (Index k = Index(S.size()) - 1; k >= 0; --k) {
      alpha[k] = R[k] * (S[k] * d).sum();
      d -= alpha[k] * Y[k];
    }
    if (!S.empty()) { d *= (S.back() * Y.back()).sum() / Y.back().square().sum(); }
    for (Index k = 0; k < Index(S.size()); ++k) {
      double const b = R[k] * (Y[k] * d).sum();
      d += (alpha[k] - b) * S[k];
    }
    double slope = (d * cur.grad).sum();
    if (!(slope < 0)) {
      S.clear();
      Y.clear();
      R.clear();
      d = -cur.grad;
      slope = (d * cur.grad).sum();
    }
    double t = S.empty() ? first_step : 1.0;
    GroundStateProblem::Eval next;
    bool                     ok = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      next = prob(x + t * d);
      if (std::isfinite(next.f) && next.f <= cur.f + 1e-4 * t * slope) {
        ok = true;
        break;
      }
    }
    if (!ok) { break; }
    Eigen::ArrayXd const s = t * d;
    Eigen::ArrayXd const y = next.grad - cur.grad;
    double const         sy = (s * y).sum();
    double const         change = (cur.f - next.f) / std::abs(cur.f);
    x += s;
    cur = std::move(next);
    if (memory > 0 && sy > 1e-14 * std::sqrt(s.square().sum() * y.square().sum())) {
      S.push_back(s);
      Y.push_back(y);
      R.push_back(1 / sy);
      if (int(S.size()) > memory) {
        S.pop_front();
        Y.pop_front();
        R.pop_front();
      }
    }
    if (memory == 0) { first_step = 2 * t; }
    quiet = change < tolerance ? quiet + 1 : 0;
    if (quiet >= 5) { break; }
  }
  return {x, cur.f, it};
}
} // namespace

auto ground_state(double lambda, GroundStateOptions const &opts) -> GroundStateResult
{
  if (!(lambda > 0 && lambda < 1)) { throw std::invalid_argument("ground_state: lambda must lie in (0, 1)"); }
  if (opts.grid.n != 3) { throw std::invalid_argument("ground_state: the trace problem lives on three-dimensional profiles"); }
  if (opts.widths.empty()) { throw std::invalid_argument("ground_state: no starting widths"); }
  auto const plan = make_plan<double>(opts.grid);
  auto const &p = *plan;
  GroundStateProblem prob{plan, lambda, opts.kappa, 1 / (p.w_hat * (1 + p.rho.cube())).sqrt(), p.w_hat * p.rho.cube()};

  GroundStateResult res;
  res.lambda = lambda;
  res.seed = opts.seed;
  res.A = inf;
  double lo = inf, hi = 0;
  for (double width : opts.widths) {
    GroundStateStart start{width};
    Eigen::ArrayXd   x0 = transform(gaussian(plan, width)).values / prob.P;
    auto const       run = lbfgs(prob, x0, opts.memory, opts.max_iterations, opts.tolerance);
    start.iterations = run.iterations;
    if (std::isfinite(run.f)) {
      auto       u = prob.profile(run.x);
      double const s0 = nehari_scale(u, lambda);
      u.values *= s0;
      double const semi = sobolev_seminorm(u, 0.75);
      start.A = semi * semi;
      start.residual = std::abs(G_lambda(u, lambda));
      start.ok = start.A > 0;
      if (start.ok) {
        lo = std::min(lo, start.A);
        hi = std::max(hi, start.A);
        if (start.A < res.A) {
          res.A = start.A;
          res.profile = u;
          res.residual = start.residual;
        }
      }
    }
    res.starts.push_back(start);
  }
  if (!std::isfinite(res.A)) { throw NehariFailure("ground_state: every start failed"); }
  res.spread = (hi - lo) / lo;
  res.scale = (1 - lambda) * (p.w * res.profile.values.square()).sum();
  res.m_lambda = J_lambda(res.profile, lambda);
  return res;
}

auto lift_ground_state(GroundStateResult const &result) -> LiftedGroundState
{
  LiftedGroundState out{extend(result.profile, 3, 2)};
  out.I = i_lambda_via_trace(result.profile, result.lambda);
  out.J = J_lambda(result.profile, result.lambda);
  out.bulk = laplacian_energy(out.field);
  double const semi = sobolev_seminorm(result.profile, 0.75);
  out.seminorm_sq = semi * semi;
  out.neumann = neumann_trace_fd(out.field).values.abs().maxCoeff();
  return out;
}

} // namespace tml
