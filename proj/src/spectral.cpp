#include "tml/spectral.hpp"
#include "tml/constants.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace tml {

auto scheme_name(Scheme s) -> std::string { return s == Scheme::uniform ? "uniform" : "log"; }

auto parse_scheme(std::string const &name) -> Scheme
{
  if (name == "uniform") { return Scheme::uniform; }
  if (name == "log") { return Scheme::log; }
  throw std::invalid_argument("unknown grid scheme '" + name + "'");
}

auto default_log_rmin(int n) -> double { return n == 1 ? 1e-16 : 1e-10; }

namespace {
auto lambda_kernel(double nu, double z) -> double
{
  if (z == 0) { return 1.0 / (std::pow(2.0, nu) * gamma_fn(nu + 1)); }
  return std::pow(z, -nu) * bessel_j(nu, z);
}
} // namespace

template <typename Scalar>
TransformPlan<Scalar>::TransformPlan(GridSpec const &s)
  : spec(s)
  , n(s.n)
  , scheme(s.scheme)
  , N(s.N)
  , order(Scalar(0.5) * s.n - 1)
  , support(s.R)
  , log_step(0)
{
  if (s.n < 1) { throw std::invalid_argument("make_grid: dimension must be >= 1"); }
  if (!(s.R > 0) || !std::isfinite(s.R)) { throw std::invalid_argument("make_grid: R must be positive and finite"); }
  if (s.N < 16) { throw std::invalid_argument("make_grid: N must be >= 16"); }
  omega = Scalar(surface_measure(n));

  if (scheme == Scheme::uniform) {
    Array const  z = bessel_zeros<Scalar>(order, N + 1);
    Scalar const S = z[N];
    support = Scalar(s.R) * S / z[N - 1];
    Scalar const V = S / support;
    r = z.head(N) / V;
    rho = z.head(N) / support;
    Array jp(N);
    for (Index i = 0; i < N; ++i) {
      jp[i] = std::abs(bessel_j(order + 1, z[i]));
    }
    Array const w0 = 2 / (V * V * jp.square());
    Array const wh0 = 2 / (support * support * jp.square());
    w = omega * w0 * r.pow(Scalar(n - 2));
    w_hat = omega * wh0 * rho.pow(Scalar(n - 2));
    hankel_ = z; // zeros retained for the dense build
  } else {
    Scalar const rmin = s.r_min > 0 ? Scalar(s.r_min) : Scalar(default_log_rmin(n));
    if (!(rmin < s.R)) { throw std::invalid_argument("make_grid: r_min must be below R"); }
    spec.r_min = double(rmin);
    Scalar const t0 = std::log(rmin);
    log_step = (std::log(Scalar(s.R)) - t0) / Scalar(N - 1);
    Scalar const x0 = std::log(pi_v<Scalar> / 2) - Scalar(N - 1) * log_step;
    r.resize(N);
    rho.resize(N);
    for (Index i = 0; i < N; ++i) {
      r[i] = std::exp(t0 + Scalar(i) * log_step);
      rho[i] = std::exp(x0 - t0 + Scalar(i) * log_step);
    }
    r[N - 1] = Scalar(s.R);
    w = omega * log_step * r.pow(Scalar(n));
    w_hat = omega * log_step * rho.pow(Scalar(n));

    // A_ij = (1/N) Σ_m k(ω_m) exp(iω_m (x0 + (i+j)Δt)),  k(ω) = 2^{-iω} Γ((ν+1-iω)/2) / Γ((ν+1+iω)/2)
    using C = std::complex<Scalar>;
    Scalar const      L = Scalar(N) * log_step;
    std::vector<C>    spectrum(N), coeff(N);
    Scalar const      a = order + 1;
    for (Index k = 0; k < N; ++k) {
      Index const m = (k <= (N - 1) / 2) ? k : k - N;
      Scalar const om = 2 * pi_v<Scalar> * Scalar(m) / L;
      C const lk = C(0, -om * std::log(Scalar(2))) + log_gamma(C(a / 2, -om / 2)) - log_gamma(C(a / 2, om / 2));
      C val = std::exp(lk + C(0, om * x0));
      if (N % 2 == 0 && k == N / 2) { val = C(val.real() >= 0 ? 1 : -1, 0); }
      spectrum[k] = val;
    }
    Eigen::FFT<Scalar> fft;
    fft.inv(coeff, spectrum);
    hankel_.resize(2 * N - 1);
    for (Index k = 0; k < 2 * N - 1; ++k) {
      hankel_[k] = coeff[k % N].real();
    }
  }
}

template <typename Scalar> void TransformPlan<Scalar>::build_dense() const
{
  forward_.resize(N, N);
  inverse_.resize(N, N);
  if (scheme == Scheme::uniform) {
    Array const &z = hankel_;
    Scalar const S = z[N];
    Array        jp(N);
    for (Index i = 0; i < N; ++i) {
      jp[i] = std::abs(bessel_j(order + 1, z[i]));
    }
    Scalar const V = S / support;
    Array const  sw0 = std::sqrt(Scalar(2)) / (V * jp);
    Array const  swh0 = std::sqrt(Scalar(2)) / (support * jp);
    Matrix       T(N, N);
    for (Index j = 0; j < N; ++j) {
      for (Index i = j; i < N; ++i) {
        T(i, j) = 2 / S * bessel_j(order, z[i] * z[j] / S) / (jp[i] * jp[j]);
        T(j, i) = T(i, j);
      }
    }
    Array const rnu = r.pow(order);
    Array const pnu = rho.pow(order);
    forward_ = ((1 / (pnu * swh0)).matrix().asDiagonal() * T) * (sw0 * rnu).matrix().asDiagonal();
    inverse_ = ((1 / (rnu * sw0)).matrix().asDiagonal() * T) * (swh0 * pnu).matrix().asDiagonal();
  } else {
    Scalar const h = Scalar(0.5) * n;
    Array const  rs = r.pow(h);
    Array const  ps = rho.pow(h);
    for (Index j = 0; j < N; ++j) {
      for (Index i = 0; i < N; ++i) {
        forward_(i, j) = hankel_[i + j] * rs[j] / ps[i];
        inverse_(i, j) = hankel_[i + j] * ps[j] / rs[i];
      }
    }
  }
}

template <typename Scalar> auto TransformPlan<Scalar>::forward() const -> Matrix const &
{
  std::call_once(forward_once_, [this] { build_dense(); });
  return forward_;
}

template <typename Scalar> auto TransformPlan<Scalar>::inverse() const -> Matrix const &
{
  std::call_once(forward_once_, [this] { build_dense(); });
  return inverse_;
}

template <typename Scalar> auto TransformPlan<Scalar>::radial_derivative() const -> Matrix const &
{
  if (scheme != Scheme::uniform) { throw std::logic_error("radial_derivative: uniform grids only"); }
  std::call_once(derivative_once_, [this] {
    derivative_.resize(N, N);
    for (Index j = 0; j < N; ++j) {
      for (Index i = 0; i < N; ++i) {
        Scalar const z = rho[j] * r[i];
        derivative_(i, j) = -w_hat[j] / omega * rho[j] * std::pow(z, -order) * bessel_j(order + 1, z);
      }
    }
  });
  return derivative_;
}

template <typename Scalar> auto TransformPlan<Scalar>::kernel_row(Scalar x) const -> Array
{
  if (scheme != Scheme::uniform) { throw std::logic_error("kernel_row: uniform grids only"); }
  Array row(N);
  for (Index j = 0; j < N; ++j) {
    row[j] = w_hat[j] / omega * Scalar(lambda_kernel(double(order), double(rho[j] * x)));
  }
  return row;
}

template <typename Scalar> auto make_plan(GridSpec const &spec) -> PlanPtr<Scalar>
{
  return std::make_shared<TransformPlan<Scalar> const>(spec);
}

template <typename Scalar> auto make_grid(GridSpec const &spec) -> std::pair<RadialProfile<Scalar>, PlanPtr<Scalar>>
{
  auto plan = make_plan<Scalar>(spec);
  return {RadialProfile<Scalar>{plan, RadialProfile<Scalar>::Array::Zero(plan->N)}, plan};
}

template <typename Scalar> void require_same_grid(PlanPtr<Scalar> const &a, PlanPtr<Scalar> const &b)
{
  if (a != b) { throw std::invalid_argument("profiles live on different grids"); }
}

namespace {
template <typename Scalar> void check_profile(PlanPtr<Scalar> const &plan, Index size)
{
  if (!plan) { throw std::invalid_argument("profile has no transform plan"); }
  if (size != plan->N) { throw std::invalid_argument("profile size does not match its grid"); }
}
} // namespace

template <typename Scalar> auto transform(RadialProfile<Scalar> const &u) -> SpectralProfile<Scalar>
{
  check_profile(u.plan, u.size());
  return {u.plan, (u.plan->forward() * u.values.matrix()).array()};
}

template <typename Scalar> auto inverse_transform(SpectralProfile<Scalar> const &f) -> RadialProfile<Scalar>
{
  check_profile(f.plan, f.size());
  return {f.plan, (f.plan->inverse() * f.values.matrix()).array()};
}

template <typename Scalar> auto fractional_laplacian(RadialProfile<Scalar> const &u, Scalar s) -> RadialProfile<Scalar>
{
  check_profile(u.plan, u.size());
  if (s < 0) { throw std::invalid_argument("fractional_laplacian: order must be nonnegative"); }
  if (s == 0) { return u; }
  auto const &p = *u.plan;
  if (p.scheme == Scheme::uniform) {
    auto f = transform(u);
    f.values *= p.rho.pow(2 * s);
    return inverse_transform(f);
  }
  return {u.plan, mellin_fractional(p, u.values, s, default_mellin_bias + 2 * s)};
}

template <typename Scalar> auto riesz_potential(RadialProfile<Scalar> const &u, Scalar sigma) -> RadialProfile<Scalar>
{
  check_profile(u.plan, u.size());
  auto const &p = *u.plan;
  if (!(sigma > 0) || !(sigma < p.n)) { throw std::invalid_argument("riesz_potential: order must lie in (0, n)"); }
  if (p.scheme == Scheme::uniform) {
    auto f = transform(u);
    f.values *= p.rho.pow(-sigma);
    return inverse_transform(f);
  }
  return {u.plan, mellin_riesz(p, u.values, sigma, default_riesz_bias(p.n, sigma))};
}

template <typename Scalar> auto riesz_truncation_estimate(RadialProfile<Scalar> const &u, Scalar sigma) -> Scalar
{
  auto const  &p = *u.plan;
  Scalar const scale = u.values.abs().maxCoeff();
  if (scale == 0) { return 0; }
  if (p.scheme == Scheme::uniform) {
    Scalar const f0 = std::abs(transform(u).values[0]);
    return f0 * std::pow(p.rho[0], p.n - sigma) / (p.n - sigma) / scale;
  }
  return (std::abs(u.values[0]) * std::pow(p.r[0], sigma) + std::abs(u.values[p.N - 1]) * std::pow(p.r[p.N - 1], sigma)) / scale;
}

template <typename Scalar> auto lp_norm(RadialProfile<Scalar> const &u, Scalar q) -> Scalar
{
  check_profile(u.plan, u.size());
  if (q < 1) { throw std::invalid_argument("lp_norm: q must be >= 1"); }
  return std::pow((u.plan->w * u.values.abs().pow(q)).sum(), 1 / q);
}

template <typename Scalar> auto l2_norm(SpectralProfile<Scalar> const &f) -> Scalar
{
  check_profile(f.plan, f.size());
  return std::sqrt((f.plan->w_hat * f.values.square()).sum());
}

template <typename Scalar> auto sobolev_seminorm(RadialProfile<Scalar> const &u, Scalar s) -> Scalar
{
  check_profile(u.plan, u.size());
  if (s < 0) { throw std::invalid_argument("sobolev_seminorm: order must be nonnegative"); }
  if (s == 0) { return lp_norm(u, Scalar(2)); }
  auto const &p = *u.plan;
  if (p.scheme == Scheme::uniform) {
    auto const f = transform(u);
    return std::sqrt((p.w_hat * p.rho.pow(4 * s) * f.values.square()).sum());
  }
  return lp_norm(fractional_laplacian(u, s), Scalar(2));
}

namespace {
// Natural cubic spline through (t_i, y_i) on a uniform abscissa.
template <typename Scalar>
auto spline_eval(Scalar t0, Scalar h, Eigen::Array<Scalar, Eigen::Dynamic, 1> const &y, Eigen::Array<Scalar, Eigen::Dynamic, 1> const &t)
  -> Eigen::Array<Scalar, Eigen::Dynamic, 1>
{
  Index const                             N = y.size();
  Eigen::Array<Scalar, Eigen::Dynamic, 1> m = Eigen::Array<Scalar, Eigen::Dynamic, 1>::Zero(N);
  // Thomas algorithm for 4 m_i + m_{i-1} + m_{i+1} = 6 (y_{i+1} - 2y_i + y_{i-1}) / h², m_0 = m_{N-1} = 0
  std::vector<Scalar> c(N, 0), d(N, 0);
  for (Index i = 1; i < N - 1; ++i) {
    Scalar const rhs = 6 * (y[i + 1] - 2 * y[i] + y[i - 1]) / (h * h);
    Scalar const denom = 4 - (i > 1 ? c[i - 1] : 0);
    c[i] = 1 / denom;
    d[i] = (rhs - (i > 1 ? d[i - 1] : 0)) / denom;
  }
  for (Index i = N - 2; i >= 1; --i) {
    m[i] = d[i] - c[i] * (i + 1 < N - 1 ? m[i + 1] : 0);
  }
  Eigen::Array<Scalar, Eigen::Dynamic, 1> out(t.size());
  for (Index k = 0; k < t.size(); ++k) {
    Scalar const x = (t[k] - t0) / h;
    if (x <= 0) {
      out[k] = y[0];
      continue;
    }
    if (x >= Scalar(N - 1)) {
      out[k] = x > Scalar(N - 1) + Scalar(1e-9) ? Scalar(0) : y[N - 1];
      continue;
    }
    Index const  i = std::min<Index>(Index(x), N - 2);
    Scalar const a = Scalar(i + 1) - x, b = x - Scalar(i);
    out[k] = a * y[i] + b * y[i + 1] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6;
  }
  return out;
}
} // namespace

template <typename Scalar>
auto evaluate(RadialProfile<Scalar> const &u, Eigen::Array<Scalar, Eigen::Dynamic, 1> const &x) -> Eigen::Array<Scalar, Eigen::Dynamic, 1>
{
  check_profile(u.plan, u.size());
  auto const                             &p = *u.plan;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> out(x.size());
  if (p.scheme == Scheme::uniform) {
    auto const f = transform(u);
    for (Index k = 0; k < x.size(); ++k) {
      if (x[k] < 0) { throw std::invalid_argument("evaluate: negative radius"); }
      out[k] = x[k] > p.support ? Scalar(0) : (p.kernel_row(x[k]) * f.values).sum();
    }
    return out;
  }
  return spline_eval<Scalar>(std::log(p.r[0]), p.log_step, u.values, x.max(std::numeric_limits<Scalar>::min()).log());
}

template <typename Scalar> auto resample(RadialProfile<Scalar> const &u, PlanPtr<Scalar> const &target) -> RadialProfile<Scalar>
{
  if (u.plan->n != target->n) { throw std::invalid_argument("resample: dimension mismatch"); }
  return {target, evaluate(u, target->r)};
}

template <typename Scalar> auto dilate(RadialProfile<Scalar> const &u, Scalar lambda) -> RadialProfile<Scalar>
{
  if (!(lambda > 0)) { throw std::invalid_argument("dilate: factor must be positive"); }
  return {u.plan, evaluate(u, Eigen::Array<Scalar, Eigen::Dynamic, 1>(lambda * u.plan->r))};
}

template class TransformPlan<double>;
template auto make_plan<double>(GridSpec const &) -> PlanPtr<double>;
template auto make_grid<double>(GridSpec const &) -> std::pair<RadialProfile<double>, PlanPtr<double>>;
template auto transform<double>(RadialProfile<double> const &) -> SpectralProfile<double>;
template auto inverse_transform<double>(SpectralProfile<double> const &) -> RadialProfile<double>;
template auto fractional_laplacian<double>(RadialProfile<double> const &, double) -> RadialProfile<double>;
template auto riesz_potential<double>(RadialProfile<double> const &, double) -> RadialProfile<double>;
template auto riesz_truncation_estimate<double>(RadialProfile<double> const &, double) -> double;
template auto sobolev_seminorm<double>(RadialProfile<double> const &, double) -> double;
template auto lp_norm<double>(RadialProfile<double> const &, double) -> double;
template auto l2_norm<double>(SpectralProfile<double> const &) -> double;
template auto evaluate<double>(RadialProfile<double> const &, Eigen::ArrayXd const &) -> Eigen::ArrayXd;
template auto resample<double>(RadialProfile<double> const &, PlanPtr<double> const &) -> RadialProfile<double>;
template auto dilate<double>(RadialProfile<double> const &, double) -> RadialProfile<double>;
template void require_same_grid<double>(PlanPtr<double> const &, PlanPtr<double> const &);

} // namespace tml
