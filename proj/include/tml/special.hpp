#pragma once

#include <Eigen/Core>
#include <complex>

namespace tml {

using Index = Eigen::Index;

template <typename Scalar> constexpr Scalar pi_v = Scalar(3.141592653589793238462643383279502884L);

// Lanczos approximation (g = 7, 9 terms); reflection below 1/2.
template <typename Scalar = double> auto gamma_fn(Scalar x) -> Scalar;
template <typename Scalar = double> auto log_gamma(std::complex<Scalar> z) -> std::complex<Scalar>;

// k!! with 0!! = (-1)!! = 1
auto double_factorial(int k) -> double;
auto binomial(int n, int k) -> double;

// J_nu(x) for x >= 0; half-integer orders go through closed forms.
template <typename Scalar = double> auto bessel_j(Scalar nu, Scalar x) -> Scalar;

// First `count` positive zeros of J_nu, nu >= -1/2.
template <typename Scalar = double> auto bessel_zeros(Scalar nu, Index count) -> Eigen::Array<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar = double> struct GaussLegendre
{
  Eigen::Array<Scalar, Eigen::Dynamic, 1> x, w; // on [-1, 1]
  explicit GaussLegendre(Index order);

  // Composite rule on [a, b] with `panels` equal panels.
  auto composite(Scalar a, Scalar b, Index panels) const
    -> std::pair<Eigen::Array<Scalar, Eigen::Dynamic, 1>, Eigen::Array<Scalar, Eigen::Dynamic, 1>>;
};

extern template auto gamma_fn<double>(double) -> double;
extern template auto log_gamma<double>(std::complex<double>) -> std::complex<double>;
extern template auto bessel_j<double>(double, double) -> double;
extern template auto bessel_zeros<double>(double, Index) -> Eigen::ArrayXd;
extern template struct GaussLegendre<double>;

} // namespace tml
