#include "tml/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tml {

namespace {
constexpr std::array<double, 9> lanczos_p = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double lanczos_g = 7.0;
} // namespace

template <typename Scalar> auto gamma_fn(Scalar x) -> Scalar
{
  if (x == std::floor(x) && x <= 0) { throw std::domain_error("gamma_fn: pole at nonpositive integer"); }
  if (x < Scalar(0.5)) { return pi_v<Scalar> / (std::sin(pi_v<Scalar> * x) * gamma_fn(Scalar(1) - x)); }
  Scalar const z = x - 1;
  Scalar       a = Scalar(lanczos_p[0]);
  for (int k = 1; k < 9; ++k) {
    a += Scalar(lanczos_p[k]) / (z + k);
  }
  Scalar const t = z + Scalar(lanczos_g) + Scalar(0.5);
  return std::sqrt(2 * pi_v<Scalar>) * std::pow(t, z + Scalar(0.5)) * std::exp(-t) * a;
}

template <typename Scalar> auto log_gamma(std::complex<Scalar> z) -> std::complex<Scalar>
{
  using C = std::complex<Scalar>;
  // Shift into Re z >= 1/2 where the Lanczos sum is uniformly accurate.
  C shift(0);
  while (z.real() < Scalar(0.5)) {
    if (std::abs(z) == 0) { throw std::domain_error("log_gamma: pole at zero"); }
    shift -= std::log(z);
    z += Scalar(1);
  }
  C const zm = z - Scalar(1);
  C       a{Scalar(lanczos_p[0])};
  for (int k = 1; k < 9; ++k) {
    a += Scalar(lanczos_p[k]) / (zm + Scalar(k));
  }
  C const t = zm + Scalar(lanczos_g) + Scalar(0.5);
  return shift + Scalar(0.5) * std::log(2 * pi_v<Scalar>) + (zm + Scalar(0.5)) * std::log(t) - t + std::log(a);
}

auto double_factorial(int k) -> double
{
  if (k < -1) { throw std::domain_error("double_factorial: k < -1"); }
  double v = 1;
  for (int j = k; j > 1; j -= 2) {
    v *= j;
  }
  return v;
}

auto binomial(int n, int k) -> double
{
  if (k < 0 || k > n) { return 0; }
  double v = 1;
  for (int j = 1; j <= k; ++j) {
    v = v * (n - k + j) / j;
  }
  return v;
}

namespace {
// Spherical Bessel j_l by upward recurrence (stable for x > l), falling back to the library below that.
template <typename Scalar> auto spherical_j(int l, Scalar x) -> Scalar
{
  if (x == 0) { return l == 0 ? Scalar(1) : Scalar(0); }
  if (x < Scalar(l + 1)) { return Scalar(std::sph_bessel(unsigned(l), double(x))); }
  Scalar j0 = std::sin(x) / x;
  if (l == 0) { return j0; }
  Scalar j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  for (int k = 1; k < l; ++k) {
    Scalar const j2 = Scalar(2 * k + 1) / x * j1 - j0;
    j0 = j1;
    j1 = j2;
  }
  return j1;
}
} // namespace

template <typename Scalar> auto bessel_j(Scalar nu, Scalar x) -> Scalar
{
  if (x < 0) { throw std::domain_error("bessel_j: negative argument"); }
  Scalar const twice = 2 * nu;
  if (twice == std::round(twice) && std::fmod(std::abs(twice), Scalar(2)) == 1) {
    int const l = int(std::round(nu - Scalar(0.5)));
    if (l == -1) { return std::sqrt(2 / (pi_v<Scalar> * x)) * std::cos(x); }
    return std::sqrt(2 * x / pi_v<Scalar>) * spherical_j<Scalar>(l, x);
  }
  if (nu < 0) { throw std::domain_error("bessel_j: negative non-half-integer order"); }
  return Scalar(std::cyl_bessel_j(double(nu), double(x)));
}

template <typename Scalar> auto bessel_zeros(Scalar nu, Index count) -> Eigen::Array<Scalar, Eigen::Dynamic, 1>
{
  if (nu < Scalar(-0.5)) { throw std::domain_error("bessel_zeros: order below -1/2"); }
  Eigen::Array<Scalar, Eigen::Dynamic, 1> z(count);
  if (nu == Scalar(-0.5)) {
    for (Index k = 0; k < count; ++k) {
      z[k] = (Scalar(k) + Scalar(0.5)) * pi_v<Scalar>;
    }
    return z;
  }
  if (nu == Scalar(0.5)) {
    for (Index k = 0; k < count; ++k) {
      z[k] = Scalar(k + 1) * pi_v<Scalar>;
    }
    return z;
  }
  Scalar const mu = 4 * nu * nu;
  for (Index k = 0; k < count; ++k) {
    Scalar const b = (Scalar(k + 1) + nu / 2 - Scalar(0.25)) * pi_v<Scalar>;
    Scalar const e = 8 * b;
    Scalar       x = b - (mu - 1) / e - 4 * (mu - 1) * (7 * mu - 31) / (3 * e * e * e);
    for (int it = 0; it < 60; ++it) {
      Scalar const j = bessel_j(nu, x);
      Scalar const dj = nu / x * j - bessel_j(nu + 1, x);
      Scalar const step = j / dj;
      x -= step;
      if (std::abs(step) <= 4 * std::numeric_limits<Scalar>::epsilon() * x) { break; }
    }
    if (k > 0 && !(x > z[k - 1])) { throw std::runtime_error("bessel_zeros: Newton iteration lost a zero"); }
    z[k] = x;
  }
  return z;
}

template <typename Scalar> GaussLegendre<Scalar>::GaussLegendre(Index order)
  : x(order)
  , w(order)
{
  if (order < 1) { throw std::invalid_argument("GaussLegendre: order < 1"); }
  for (Index i = 0; i < order; ++i) {
    Scalar t = std::cos(pi_v<Scalar> * (Scalar(i) + Scalar(0.75)) / (Scalar(order) + Scalar(0.5)));
    Scalar dp = 0;
    for (int it = 0; it < 100; ++it) {
      Scalar p0 = 1, p1 = t;
      for (Index k = 2; k <= order; ++k) {
        Scalar const p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (t * p1 - p0) / (t * t - 1);
      Scalar const step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) { break; }
    }
    x[order - 1 - i] = t;
    w[order - 1 - i] = 2 / ((1 - t * t) * dp * dp);
  }
}

template <typename Scalar>
auto GaussLegendre<Scalar>::composite(Scalar a, Scalar b, Index panels) const
  -> std::pair<Eigen::Array<Scalar, Eigen::Dynamic, 1>, Eigen::Array<Scalar, Eigen::Dynamic, 1>>
{
  Index const                             q = x.size();
  Eigen::Array<Scalar, Eigen::Dynamic, 1> nodes(q * panels), weights(q * panels);
  Scalar const                            h = (b - a) / Scalar(panels);
  for (Index p = 0; p < panels; ++p) {
    Scalar const mid = a + (Scalar(p) + Scalar(0.5)) * h;
    nodes.segment(p * q, q) = mid + Scalar(0.5) * h * x;
    weights.segment(p * q, q) = Scalar(0.5) * h * w;
  }
  return {nodes, weights};
}

template auto gamma_fn<double>(double) -> double;
template auto log_gamma<double>(std::complex<double>) -> std::complex<double>;
template auto bessel_j<double>(double, double) -> double;
template auto bessel_zeros<double>(double, Index) -> Eigen::ArrayXd;
template struct GaussLegendre<double>;

} // namespace tml
