#include "tml/functionals.hpp"
#include "tml/constants.hpp"
#include "tml/extension.hpp"
#include "tml/rearrangement.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tml {

namespace {
constexpr double beta3 = 12 * pi_v<double> * pi_v<double>;

void require_nonzero(RadialProfile<double> const &u, char const *who)
{
  if (!(u.values.abs().maxCoeff() > 0)) { throw std::invalid_argument(std::string(who) + ": zero profile"); }
}

void require_lambda(double lambda, char const *who)
{
  if (!(lambda > 0 && lambda < 1)) { throw std::invalid_argument(std::string(who) + ": lambda must lie in (0, 1)"); }
}

void require_dim3(RadialProfile<double> const &u, char const *who)
{
  if (u.dim() != 3) { throw std::invalid_argument(std::string(who) + ": defined on three-dimensional profiles"); }
}
} // namespace

auto expm1_minus_x(double x) -> double
{
  if (std::abs(x) < 0.5) {
    double term = x * x / 2, sum = term;
    for (int k = 3; k < 40 && std::abs(term) > 1e-18 * std::abs(sum); ++k) {
      term *= x / k;
      sum += term;
    }
    return sum;
  }
  return std::expm1(x) - x;
}

auto exp_tail(double t, int k) -> double
{
  if (k < 0) { return std::exp(t); }
  if (std::abs(t) < 1.0 + k) {
    // Σ_{j > k} t^j / j!
    double term = 1;
    for (int j = 1; j <= k + 1; ++j) {
      term *= t / j;
    }
    double sum = term;
    for (int j = k + 2; j < k + 80 && std::abs(term) > 1e-18 * std::abs(sum); ++j) {
      term *= t / j;
      sum += term;
    }
    return sum;
  }
  double head = 0, term = 1;
  for (int j = 0; j <= k; ++j) {
    head += term;
    term *= t / (j + 1);
  }
  return std::exp(t) - head;
}

auto exp_integral(RadialProfile<double> const &u, double beta, double p, GrowthDenominator d) -> FunctionalValue
{
  if (p < 0) { throw std::invalid_argument("exp_integral: p must be >= 0"); }
  FunctionalValue out;
  double          sum = 0;
  for (Index i = 0; i < u.size(); ++i) {
    double const v = u.values[i];
    double const x = beta * v * v;
    double       e;
    if (x > 700) {
      out.overflow = true;
      e = std::exp(700.0);
    } else {
      e = std::expm1(x);
    }
    double const den = d == GrowthDenominator::power ? std::pow(1 + std::abs(v), p) : 1 + v * v;
    sum += u.plan->w[i] * e / den;
  }
  out.numerator = out.overflow ? std::numeric_limits<double>::infinity() : sum;
  out.value = out.numerator;
  return out;
}

namespace {
auto ratio(FunctionalValue v, RadialProfile<double> const &u) -> FunctionalValue
{
  v.denominator = (u.plan->w * u.values.square()).sum();
  v.value = v.overflow ? std::numeric_limits<double>::infinity() : v.numerator / v.denominator;
  return v;
}
} // namespace

auto tm_ratio(RadialProfile<double> const &u, double beta) -> FunctionalValue
{
  require_nonzero(u, "tm_ratio");
  return ratio(exp_integral(u, beta), u);
}

auto exact_growth_ratio(RadialProfile<double> const &u, double beta, double p, GrowthDenominator d) -> FunctionalValue
{
  require_nonzero(u, "exact_growth_ratio");
  return ratio(exp_integral(u, beta, p, d), u);
}

auto g_lambda(double t, double lambda) -> double { return lambda / beta3 * expm1_minus_x(beta3 * t * t); }

auto G_lambda(RadialProfile<double> const &u, double lambda) -> double
{
  require_lambda(lambda, "G_lambda");
  require_dim3(u, "G_lambda");
  double sum = 0;
  for (Index i = 0; i < u.size(); ++i) {
    sum += u.plan->w[i] * ((1 - lambda) * u.values[i] * u.values[i] - g_lambda(u.values[i], lambda));
  }
  return sum;
}

auto J_lambda(RadialProfile<double> const &u, double lambda) -> double
{
  require_lambda(lambda, "J_lambda");
  require_dim3(u, "J_lambda");
  double const semi = sobolev_seminorm(u, 0.75);
  double const l2 = (u.plan->w * u.values.square()).sum();
  return 0.5 * (2 * semi * semi + l2) - lambda / (2 * beta3) * exp_integral(u, beta3).value;
}

auto i_lambda_via_trace(RadialProfile<double> const &v, double lambda) -> double
{
  require_lambda(lambda, "i_lambda_via_trace");
  require_dim3(v, "i_lambda_via_trace");
  double const bulk = extension_energy(extend(v, 3, 2));
  double const l2 = (v.plan->w * v.values.square()).sum();
  return 0.5 * bulk + 0.5 * l2 - lambda / (2 * beta3) * exp_integral(v, beta3).value;
}

RadialReduction::RadialReduction(PlanPtr<double> source, Index n_out, double s_min, double A)
  : source_(std::move(source))
{
  auto const &p = *source_;
  int const   n = p.n;
  if (n < 2) { throw std::invalid_argument("radial_reduction: n must be >= 2"); }
  if (p.scheme != Scheme::uniform) { throw std::invalid_argument("radial_reduction: source grid must be uniform"); }
  A_ = A > 0 ? A : reduction_constant(n);
  double const h = 0.5 * n;
  target_ = make_plan<double>({2, std::pow(p.spec.R, h), n_out, Scheme::log, s_min});
  double const c = std::sqrt(0.5 * n * A_);

  Eigen::MatrixXd K(n_out, p.N), D(n_out, p.N);
  for (Index i = 0; i < n_out; ++i) {
    double const r = std::pow(target_->r[i], 1 / h);
    K.row(i) = p.kernel_row(r).matrix().transpose();
    for (Index j = 0; j < p.N; ++j) {
      double const z = p.rho[j] * r;
      // dw/dlog s = c (2/n) r u'(r)
      D(i, j) = -p.w_hat[j] / p.omega * p.rho[j] * std::pow(z, -p.order) * bessel_j(p.order + 1, z) * r / h;
    }
  }
  values_ = c * K * p.forward();
  slopes_ = c * D * p.forward();
}

auto RadialReduction::apply(RadialProfile<double> const &u) const -> RadialProfile<double>
{
  require_same_grid(u.plan, source_);
  return {target_, (values_ * u.values.matrix()).array()};
}

auto RadialReduction::gradient_energy(RadialProfile<double> const &u) const -> double
{
  require_same_grid(u.plan, source_);
  Eigen::VectorXd const d = slopes_ * u.values.matrix();
  return 2 * pi_v<double> * target_->log_step * d.squaredNorm();
}

auto RadialReduction::l2_identity(RadialProfile<double> const &u) const -> std::pair<double, double>
{
  auto const   w = apply(u);
  int const    n = source_->n;
  double const lhs = (target_->w * w.values.square()).sum() / (2 * pi_v<double>);
  double const rhs = n * n * A_ / 4 * (source_->w * u.values.square()).sum() / source_->omega;
  return {lhs, rhs};
}

auto radial_reduction(RadialProfile<double> const &u) -> RadialProfile<double> { return RadialReduction(u.plan).apply(u); }

auto hardy_rellich(RadialProfile<double> const &u) -> HardyRellich
{
  auto const &p = *u.plan;
  int const   n = p.n;
  if (n < 2) { throw std::invalid_argument("hardy_rellich: n must be >= 2"); }
  if (p.scheme != Scheme::uniform) { throw std::invalid_argument("hardy_rellich: uniform grids only"); }
  auto const            f = transform(u);
  Eigen::ArrayXd const du = (p.radial_derivative() * f.values.matrix()).array();
  HardyRellich          hr;
  double const          semi = sobolev_seminorm(u, 0.25 * n);
  hr.lhs = semi * semi;
  double const g = gamma_fn(0.5 * n);
  hr.rhs = std::pow(2.0, n - 2) * g * g * (p.w * du.square() * p.r.pow(2.0 - n)).sum();
  if (!std::isfinite(hr.rhs)) { throw std::runtime_error("hardy_rellich: weighted gradient integral diverges on this grid"); }
  return hr;
}

auto hardy_rellich_margin(RadialProfile<double> const &u, int n) -> double
{
  if (u.dim() != n) { throw std::invalid_argument("hardy_rellich_margin: dimension mismatch"); }
  return hardy_rellich(u).margin();
}

auto rearrangement_comparison(RadialProfile<double> const &u, double beta) -> RearrangementComparison
{
  require_nonzero(u, "rearrangement_comparison");
  auto const [v, report] = fourier_rearrange(u);
  auto const lhs = exp_integral(u, beta, 0, GrowthDenominator::one_plus_sq);
  auto const rhs = exp_integral(v, beta, 0, GrowthDenominator::one_plus_sq);
  double const l2 = (u.plan->w * u.values.square()).sum();
  RearrangementComparison out;
  out.overflow = lhs.overflow || rhs.overflow || beta > 700;
  out.lhs = lhs.value;
  out.rhs = 2 * (std::expm1(std::min(beta, 700.0)) - 2 * beta) * l2 + 2 * rhs.value;
  return out;
}

} // namespace tml
