#include "tml/constants.hpp"
#include "tml/special.hpp"

#include <cmath>
#include <stdexcept>

namespace tml {

namespace {
auto is_half_integer(double m) -> bool { return std::abs(2 * m - std::round(2 * m)) < 1e-12; }
} // namespace

auto surface_measure(int n) -> double
{
  if (n < 1) { throw std::invalid_argument("surface_measure: n must be >= 1"); }
  return 2 * std::pow(pi_v<double>, 0.5 * n) / gamma_fn(0.5 * n);
}

auto adams_sharp_constant(int n, double m) -> double
{
  if (n < 1 || !(m > 0)) { throw std::invalid_argument("adams_sharp_constant: nonpositive input"); }
  if (m >= n) { throw std::invalid_argument("adams_sharp_constant: requires m < n"); }
  if (!is_half_integer(m)) { throw std::invalid_argument("adams_sharp_constant: m must be an integer or half-integer"); }
  long const twice = std::lround(2 * m);
  bool const even = (twice % 4 == 0);
  double const ratio = even ? gamma_fn(0.5 * m) / gamma_fn(0.5 * (n - m)) : gamma_fn(0.5 * (m + 1)) / gamma_fn(0.5 * (n - m + 1));
  double const base = std::pow(pi_v<double>, 0.5 * n) * std::pow(2.0, m) * ratio;
  return n / surface_measure(n) * std::pow(base, n / (n - m));
}

auto adams_sharp_constant(ConstantSpec const &spec) -> double { return adams_sharp_constant(spec.n, spec.m); }

auto trace_energy_ratio(int m) -> double
{
  if (m < 1) { throw std::invalid_argument("trace_energy_ratio: m must be >= 1"); }
  return gamma_fn(double(m)) * gamma_fn(0.5) / gamma_fn(m - 0.5);
}

auto trace_sharp_constant(int m) -> double
{
  if (m < 1) { throw std::invalid_argument("trace_sharp_constant: m must be >= 1"); }
  return trace_energy_ratio(m) * adams_sharp_constant(2 * m - 1, m - 0.5);
}

auto exact_growth_An(int n) -> double
{
  if (n < 2) { throw std::invalid_argument("exact_growth_An: n must be >= 2"); }
  double const g = gamma_fn(0.5 * n);
  return std::pow(2.0, n - 3) * g * g / pi_v<double> * std::pow(2.0, 0.5 * (n + 2)) *
         std::pow(pi_v<double>, 0.5 * (n - 1)) / double_factorial(n - 2);
}

auto reduction_constant(int n) -> double
{
  if (n < 2) { throw std::invalid_argument("reduction_constant: n must be >= 2"); }
  double const g = gamma_fn(0.5 * n);
  return std::pow(2.0, n - 3) * g * g * surface_measure(n) / pi_v<double>;
}

auto moser_amplitude(int n) -> double
{
  if (n < 1) { throw std::invalid_argument("moser_amplitude: n must be >= 1"); }
  return std::pow(2 * pi_v<double>, -0.5 * n);
}

auto moser_alpha(int n) -> double
{
  if (n < 2) { throw std::invalid_argument("moser_alpha: n must be >= 2"); }
  return n * std::pow(surface_measure(n), 1.0 / (n - 1));
}

} // namespace tml
