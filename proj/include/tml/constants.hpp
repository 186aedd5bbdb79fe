#pragma once

namespace tml {

// Boundary dimension n and derivative order m (integer or half-integer).
struct ConstantSpec
{
  int    n;
  double m;
};

auto surface_measure(int n) -> double;
auto adams_sharp_constant(int n, double m) -> double;
auto adams_sharp_constant(ConstantSpec const &spec) -> double;
auto trace_sharp_constant(int m) -> double;
auto trace_energy_ratio(int m) -> double; // Γ(m)Γ(1/2)/Γ(m-1/2)
auto exact_growth_An(int n) -> double;
auto reduction_constant(int n) -> double; // 2^{n-3}Γ²(n/2)ω_{n-1}/π
auto moser_amplitude(int n) -> double;

// Moser's α_n = n ω_{n-1}^{1/(n-1)}
auto moser_alpha(int n) -> double;

} // namespace tml
