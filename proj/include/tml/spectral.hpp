#pragma once

#include "special.hpp"

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <string>

namespace tml {

enum class Scheme
{
  uniform,
  log
};

auto scheme_name(Scheme s) -> std::string;
auto parse_scheme(std::string const &name) -> Scheme;

struct GridSpec
{
  int    n = 1;
  double R = 40;
  Index  N = 1024;
  Scheme scheme = Scheme::uniform;
  double r_min = 0; // log scheme only; 0 selects default_log_rmin(n)
};

auto default_log_rmin(int n) -> double;

/*
 * Paired physical/frequency quadrature for radial functions in dimension n.
 *
 * uniform: quasi-discrete Hankel transform of order n/2 - 1 on Bessel-zero nodes.
 * log:     geometric nodes with the unbiased logarithmic Hankel kernel.
 *
 * Weights integrate against the full radial measure, Σ w_i f(r_i) ≈ ω_{n-1}∫ f(r) r^{n-1} dr.
 */
template <typename Scalar = double> class TransformPlan
{
public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit TransformPlan(GridSpec const &spec);
  TransformPlan(TransformPlan const &) = delete;
  auto operator=(TransformPlan const &) -> TransformPlan & = delete;

  GridSpec spec;
  int      n;
  Scheme   scheme;
  Index    N;
  Scalar   order;     // Hankel order n/2 - 1
  Scalar   omega;     // ω_{n-1}
  Scalar   support;   // radius of the underlying Fourier-Bessel expansion (uniform)
  Scalar   log_step;  // Δt (log)
  Array    r, w;      // physical nodes and weights
  Array    rho, w_hat; // frequency nodes and weights

  auto forward() const -> Matrix const &; // û = F u
  auto inverse() const -> Matrix const &; // u = F⁻¹ û
  auto radial_derivative() const -> Matrix const &; // u'(r_i) from û (uniform only)

  // Kernel weights (1/ω) ŵ_j Λ(ρ_j x) for evaluation off the nodes (uniform only).
  auto kernel_row(Scalar x) const -> Array;

private:
  mutable Matrix         forward_, inverse_, derivative_;
  mutable std::once_flag forward_once_, derivative_once_;
  Array                  hankel_; // log scheme: A_ij = hankel_[i + j]
  void                   build_dense() const;
};

template <typename Scalar = double> using PlanPtr = std::shared_ptr<TransformPlan<Scalar> const>;

template <typename Scalar = double> auto make_plan(GridSpec const &spec) -> PlanPtr<Scalar>;

template <typename Scalar = double> struct RadialProfile
{
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  PlanPtr<Scalar> plan;
  Array           values;

  auto dim() const -> int { return plan->n; }
  auto size() const -> Index { return values.size(); }
  auto nodes() const -> Array const & { return plan->r; }
  auto weights() const -> Array const & { return plan->w; }
};

template <typename Scalar = double> struct SpectralProfile
{
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  PlanPtr<Scalar> plan;
  Array           values;

  auto dim() const -> int { return plan->n; }
  auto size() const -> Index { return values.size(); }
  auto nodes() const -> Array const & { return plan->rho; }
  auto weights() const -> Array const & { return plan->w_hat; }
};

// Template profile (zero values) together with its plan.
template <typename Scalar = double> auto make_grid(GridSpec const &spec) -> std::pair<RadialProfile<Scalar>, PlanPtr<Scalar>>;

template <typename Scalar, typename F> auto sample(PlanPtr<Scalar> const &plan, F &&f) -> RadialProfile<Scalar>
{
  RadialProfile<Scalar> u{plan, typename RadialProfile<Scalar>::Array(plan->N)};
  for (Index i = 0; i < plan->N; ++i) {
    u.values[i] = f(plan->r[i]);
  }
  return u;
}

template <typename Scalar, typename F> auto sample_spectrum(PlanPtr<Scalar> const &plan, F &&f) -> SpectralProfile<Scalar>
{
  SpectralProfile<Scalar> u{plan, typename SpectralProfile<Scalar>::Array(plan->N)};
  for (Index i = 0; i < plan->N; ++i) {
    u.values[i] = f(plan->rho[i]);
  }
  return u;
}

template <typename Scalar = double> auto transform(RadialProfile<Scalar> const &u) -> SpectralProfile<Scalar>;
template <typename Scalar = double> auto inverse_transform(SpectralProfile<Scalar> const &f) -> RadialProfile<Scalar>;

template <typename Scalar = double> auto fractional_laplacian(RadialProfile<Scalar> const &u, Scalar s) -> RadialProfile<Scalar>;
template <typename Scalar = double> auto riesz_potential(RadialProfile<Scalar> const &u, Scalar sigma) -> RadialProfile<Scalar>;

// Size of the neglected low-frequency mass below the first frequency node, relative to max|u|.
template <typename Scalar = double> auto riesz_truncation_estimate(RadialProfile<Scalar> const &u, Scalar sigma) -> Scalar;

// ‖(−Δ)^s u‖₂
template <typename Scalar = double> auto sobolev_seminorm(RadialProfile<Scalar> const &u, Scalar s) -> Scalar;
template <typename Scalar = double> auto lp_norm(RadialProfile<Scalar> const &u, Scalar q) -> Scalar;
template <typename Scalar = double> auto l2_norm(SpectralProfile<Scalar> const &f) -> Scalar;

// Values of u at arbitrary radii: Fourier-Bessel series (uniform) or cubic interpolation in log r (log).
template <typename Scalar = double>
auto evaluate(RadialProfile<Scalar> const &u, Eigen::Array<Scalar, Eigen::Dynamic, 1> const &x) -> Eigen::Array<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar = double> auto resample(RadialProfile<Scalar> const &u, PlanPtr<Scalar> const &target) -> RadialProfile<Scalar>;
// u(λ·) on the same grid
template <typename Scalar = double> auto dilate(RadialProfile<Scalar> const &u, Scalar lambda) -> RadialProfile<Scalar>;

template <typename Scalar = double> void require_same_grid(PlanPtr<Scalar> const &a, PlanPtr<Scalar> const &b);

// exp with arguments clamped at 700; sets `overflow` when clamping happened.
inline auto clamped_exp(double x, bool &overflow) -> double
{
  if (x > 700.0) {
    overflow = true;
    return std::exp(700.0);
  }
  return std::exp(x);
}

// Mellin-space multipliers on log grids (zero-padded FFT convolution in log r).
// `bias` is the real part of the Mellin contour for the output.
auto mellin_riesz(TransformPlan<double> const &plan, Eigen::ArrayXd const &f, double sigma, double bias) -> Eigen::ArrayXd;
auto mellin_fractional(TransformPlan<double> const &plan, Eigen::ArrayXd const &f, double s, double bias) -> Eigen::ArrayXd;
// Contour abscissa shared by Riesz outputs and fractional-Laplacian inputs. Small values keep the
// r^{-c} reweighting from amplifying round-off near r_min.
inline constexpr double default_mellin_bias = 0.1;
auto default_riesz_bias(int n, double sigma) -> double;

extern template class TransformPlan<double>;
extern template auto make_plan<double>(GridSpec const &) -> PlanPtr<double>;
extern template auto make_grid<double>(GridSpec const &) -> std::pair<RadialProfile<double>, PlanPtr<double>>;
extern template auto transform<double>(RadialProfile<double> const &) -> SpectralProfile<double>;
extern template auto inverse_transform<double>(SpectralProfile<double> const &) -> RadialProfile<double>;
extern template auto fractional_laplacian<double>(RadialProfile<double> const &, double) -> RadialProfile<double>;
extern template auto riesz_potential<double>(RadialProfile<double> const &, double) -> RadialProfile<double>;
extern template auto riesz_truncation_estimate<double>(RadialProfile<double> const &, double) -> double;
extern template auto sobolev_seminorm<double>(RadialProfile<double> const &, double) -> double;
extern template auto lp_norm<double>(RadialProfile<double> const &, double) -> double;
extern template auto l2_norm<double>(SpectralProfile<double> const &) -> double;
extern template auto evaluate<double>(RadialProfile<double> const &, Eigen::ArrayXd const &) -> Eigen::ArrayXd;
extern template auto resample<double>(RadialProfile<double> const &, PlanPtr<double> const &) -> RadialProfile<double>;
extern template auto dilate<double>(RadialProfile<double> const &, double) -> RadialProfile<double>;
extern template void require_same_grid<double>(PlanPtr<double> const &, PlanPtr<double> const &);

} // namespace tml
