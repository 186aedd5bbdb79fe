#include "tml/sharpness.hpp"
#include "tml/constants.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tml {

auto moser_profile(double eps, double r, int n, PlanPtr<double> const &grid) -> MoserProfile
{
  if (!(eps > 0 && eps < 1)) { throw std::invalid_argument("moser_profile: eps must lie in (0, 1)"); }
  if (grid->n != n) { throw std::invalid_argument("moser_profile: grid dimension does not match n"); }
  if (!(r > 0) || r > grid->r[grid->N - 1]) { throw std::invalid_argument("moser_profile: r outside the grid"); }
  if (!(eps * r > grid->r[0])) { throw std::invalid_argument("moser_profile: inner radius below the smallest node"); }
  MoserProfile m;
  m.eps = eps;
  m.r = r;
  m.n = n;
  m.amplitude = moser_amplitude(n);
  m.profile = sample(grid, [&](double x) { return (x > eps * r && x < r) ? m.amplitude * std::pow(x, -0.5 * n) : 0.0; });
  m.inside = (m.profile.values != 0).count();
  if (m.inside < 32) { throw std::invalid_argument("moser_profile: annulus resolved by fewer than 32 nodes"); }
  return m;
}

auto moser_l2_closed_form(MoserProfile const &phi) -> double
{
  return phi.amplitude * phi.amplitude * surface_measure(phi.n) * std::log(1 / phi.eps);
}

auto project_out_polynomials(RadialProfile<double> const &phi, double r) -> PolynomialProjection
{
  if (!(r > 0)) { throw std::invalid_argument("project_out_polynomials: radius must be positive"); }
  auto const &p = *phi.plan;
  Index const K = (p.n - 1) / 2 + 1;
  Eigen::ArrayXd const W = (p.r < r).select(p.w, 0.0);
  Eigen::MatrixXd      B(p.N, K);
  for (Index k = 0; k < K; ++k) {
    B.col(k) = (p.r / r).pow(double(2 * k)).matrix();
  }
  Eigen::MatrixXd const G = B.transpose() * W.matrix().asDiagonal() * B;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  PolynomialProjection out;
  out.condition = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  if (!(out.condition <= 1e12)) { throw std::runtime_error("project_out_polynomials: ill-conditioned normal equations"); }
  out.coeffs = G.ldlt().solve(B.transpose() * (W * phi.values).matrix());
  Eigen::ArrayXd const P = (p.r < r).select((B * out.coeffs).array(), 0.0);
  out.projection = {phi.plan, P};
  out.profile = {phi.plan, phi.values - P};

  double const rn = std::sqrt((W * out.profile.values.square()).sum());
  for (Index k = 0; k < K; ++k) {
    double const bk = std::sqrt((W * B.col(k).array().square()).sum());
    double const ip = (W * B.col(k).array() * out.profile.values).sum();
    out.orthogonality = std::max(out.orthogonality, rn > 0 ? std::abs(ip) / (rn * bk) : 0.0);
  }
  return out;
}

auto riesz_lift(RadialProfile<double> const &phi_tilde, int n) -> RieszLift
{
  if (phi_tilde.dim() != n) { throw std::invalid_argument("riesz_lift: dimension mismatch"); }
  RieszLift out;
  out.norm = lp_norm(phi_tilde, 2.0);
  if (!(out.norm > 0)) { throw std::invalid_argument("riesz_lift: zero profile"); }
  out.psi = riesz_potential(phi_tilde, 0.5 * n);
  out.psi.values /= out.norm;
  out.truncation = riesz_truncation_estimate(phi_tilde, 0.5 * n);
  return out;
}

auto plateau_ratio(RadialProfile<double> const &psi, double eps, double r) -> double
{
  auto const &p = *psi.plan;
  double      lo = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < p.N && p.r[i] < 0.5 * eps * r; ++i) {
    lo = std::min(lo, psi.values[i] * psi.values[i]);
  }
  if (!std::isfinite(lo)) { throw std::invalid_argument("plateau_ratio: no nodes inside B_{εr/2}"); }
  return lo * adams_sharp_constant(p.n, 0.5 * p.n) / (p.n * std::log(1 / (eps * r)));
}

auto blowup_table(int n, std::vector<double> const &betas, std::vector<double> const &eps, std::vector<double> const &ps,
                  double r, PlanPtr<double> const &grid) -> std::vector<BlowupRecord>
{
  std::vector<double> es = eps;
  std::sort(es.begin(), es.end(), std::greater<>());
  std::vector<double> bs = betas, qs = ps;
  std::sort(bs.begin(), bs.end());
  std::sort(qs.begin(), qs.end());

  std::vector<RieszLift> lifts;
  std::vector<double>    plateaus, l2s;
  for (double e : es) {
    auto const phi = moser_profile(e, r, n, grid);
    auto const proj = project_out_polynomials(phi.profile, r);
    lifts.push_back(riesz_lift(proj.profile, n));
    plateaus.push_back(plateau_ratio(lifts.back().psi, e, r));
    l2s.push_back(lp_norm(lifts.back().psi, 2.0));
  }
  std::vector<BlowupRecord> out;
  for (double b : bs) {
    for (double q : qs) {
      for (size_t k = 0; k < es.size(); ++k) {
        auto const v = exact_growth_ratio(lifts[k].psi, b, q);
        out.push_back({n, b, es[k], q, v.value, v.overflow, plateaus[k], l2s[k] * l2s[k]});
      }
    }
  }
  return out;
}

auto sharpness_grid(int n) -> PlanPtr<double> { return make_plan<double>({n, 40, 4097, Scheme::log}); }

auto summarize(std::vector<BlowupRecord> const &records, double beta, double p, double eps_max) -> SweepSummary
{
  std::vector<BlowupRecord> sel;
  for (auto const &rec : records) {
    if (std::abs(rec.beta - beta) <= 1e-12 * std::abs(beta) && rec.p == p) { sel.push_back(rec); }
  }
  std::sort(sel.begin(), sel.end(), [](auto const &a, auto const &b) { return a.eps > b.eps; });
  SweepSummary s;
  s.count = Index(sel.size());
  if (sel.size() < 2) { return s; }
  double lo = sel[0].ratio, hi = sel[0].ratio;
  s.strictly_increasing = true;
  for (size_t k = 1; k < sel.size(); ++k) {
    lo = std::min(lo, sel[k].ratio);
    hi = std::max(hi, sel[k].ratio);
    if (!(sel[k].ratio > sel[k - 1].ratio)) { s.strictly_increasing = false; }
  }
  s.max_over_min = hi / lo;
  s.final_over_initial = sel.back().ratio / sel.front().ratio;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  for (auto const &rec : sel) {
    if (rec.eps > eps_max) { continue; }
    double const x = std::log(std::log(1 / rec.eps)), y = std::log(rec.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    m += 1;
  }
  if (m >= 2) { s.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx); }
  return s;
}

} // namespace tml
