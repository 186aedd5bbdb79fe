#include "tml/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace tml {

namespace {
using C = std::complex<double>;

// out = r^{-c_out} · IFFT( FFT(f · r^{c_in}) · exp(logm(c_out - iω)) ) on a padded periodic grid in log r.
template <typename LogMultiplier>
auto apply_mellin(TransformPlan<double> const &plan, Eigen::ArrayXd const &f, double c_in, double c_out, LogMultiplier &&logm)
  -> Eigen::ArrayXd
{
  if (plan.scheme != Scheme::log) { throw std::logic_error("Mellin multipliers require a log grid"); }
  Index const N = plan.N;
  if (f.size() != N) { throw std::invalid_argument("Mellin multiplier: size mismatch"); }
  double const dt = plan.log_step;
  // Beyond R the profile is continued as a power law r^{-p} fitted to the last two samples.
  double decay = 0;
  if (f[N - 1] != 0 && f[N - 2] != 0 && (f[N - 1] > 0) == (f[N - 2] > 0)) {
    double const p = -std::log(f[N - 1] / f[N - 2]) / dt;
    if (p > c_in + 0.05) { decay = p; }
  }
  // Padding long enough that both continued tails have decayed below 1e-14 before they wrap around.
  double c_min = std::min(c_in, c_out);
  if (decay > 0) { c_min = std::min(c_min, decay - c_in); }
  Index const reach = Index(std::ceil(32.0 / (std::max(c_min, 0.05) * dt)));
  Index        M = 1;
  while (M < 2 * N || M < N + 2 * reach) {
    M <<= 1;
  }
  Index const    left = (M - N) / 2;
  std::vector<C> a(M, C(0)), fa, out;
  for (Index i = 0; i < N; ++i) {
    a[left + i] = f[i] * std::pow(plan.r[i], c_in);
  }
  Eigen::FFT<double> fft;
  fft.fwd(fa, a);
  // Below r_min the profile is continued by its first value; the sampled tail is a geometric series.
  double const head = f[0] * std::pow(plan.r[0], c_in);
  double const foot = decay > 0 ? f[N - 1] * std::pow(plan.r[N - 1], c_in) : 0.0;
  for (Index k = 0; k < M; ++k) {
    Index const  m = k < M / 2 ? k : k - M;
    double const om = 2 * pi_v<double> * double(m) / (double(M) * dt);
    C const      q = std::exp(-C(c_in, -om) * dt);
    fa[k] += head * std::exp(C(0, -om * double(left) * dt)) * q / (1.0 - q);
    if (decay > 0) {
      C const g = std::exp(C(c_in - decay, -om) * dt);
      fa[k] += foot * std::exp(C(0, -om * double(left + N - 1) * dt)) * g / (1.0 - g);
    }
    fa[k] *= std::exp(logm(C(c_out, -om)));
  }
  fft.inv(out, fa);
  Eigen::ArrayXd result(N);
  for (Index i = 0; i < N; ++i) {
    result[i] = out[left + i].real() * std::pow(plan.r[i], -c_out);
  }
  return result;
}
} // namespace

auto default_riesz_bias(int n, double sigma) -> double { return std::min(default_mellin_bias, 0.5 * (n - sigma)); }

auto mellin_riesz(TransformPlan<double> const &plan, Eigen::ArrayXd const &f, double sigma, double bias) -> Eigen::ArrayXd
{
  double const n = plan.n;
  if (!(bias > 0) || !(bias < n - sigma)) { throw std::invalid_argument("mellin_riesz: contour outside the admissible strip"); }
  // M[I_σ f](z) = 2^{-σ} Γ(z/2) Γ((n-z-σ)/2) / (Γ((n-z)/2) Γ((z+σ)/2)) · M[f](z+σ)
  auto logm = [n, sigma](C z) {
    return -sigma * std::log(2.0) + log_gamma(z / 2.0) + log_gamma((n - z - sigma) / 2.0) - log_gamma((n - z) / 2.0) -
           log_gamma((z + sigma) / 2.0);
  };
  return apply_mellin(plan, f, bias + sigma, bias, logm);
}

auto mellin_fractional(TransformPlan<double> const &plan, Eigen::ArrayXd const &f, double s, double bias) -> Eigen::ArrayXd
{
  double const n = plan.n;
  double const c_in = bias - 2 * s;
  if (!(c_in > 0)) { throw std::invalid_argument("mellin_fractional: contour outside the admissible strip"); }
  // reciprocal of the Riesz multiplier of order 2s, shifted by 2s
  auto logm = [n, s](C z) {
    return -(-2 * s * std::log(2.0) + log_gamma((z - 2 * s) / 2.0) + log_gamma((n - z) / 2.0) - log_gamma((n - z + 2 * s) / 2.0) -
             log_gamma(z / 2.0));
  };
  return apply_mellin(plan, f, c_in, bias, logm);
}

} // namespace tml
