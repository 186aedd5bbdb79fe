#pragma once

#include "spectral.hpp"

#include <functional>

namespace tml {

/*
 * Per-frequency profile of the m-harmonic extension to the upper half-space:
 * Û(ρ, y) = φ_m(ρy) û(ρ) with φ_m(t) = p(t) e^{-t}, deg p = m - 1, φ_m(0) = 1.
 */
struct ExtensionMultiplier
{
  int             m = 1;
  Eigen::ArrayXd  coeffs; // p(t) = Σ coeffs[i] t^i

  auto operator()(double t) const -> double { return value(t); }
  auto value(double t, int derivative = 0) const -> double;

  // Polynomial part of d^j/dt^j φ.
  auto derivative_coeffs(int j) const -> Eigen::ArrayXd;
  // Polynomial part of (d²/dt² - 1)^k φ.
  auto shifted_laplacian_coeffs(int k) const -> Eigen::ArrayXd;
};

auto multiplier(int m) -> ExtensionMultiplier;

// Evaluate q(t) e^{-t} for a coefficient vector q.
auto exp_poly(Eigen::ArrayXd const &q, double t) -> double;
// Coefficients of d/dt [q(t) e^{-t}] / e^{-t} = q' - q.
auto exp_poly_derivative(Eigen::ArrayXd const &q) -> Eigen::ArrayXd;

// ∫₀^∞ Σ_j C(m,j) |φ_m^{(j)}|² dt by composite Gauss-Legendre on [0, 40 + 10m].
auto energy_factor(int m) -> double;

auto boundary_coefficient(int m, int k) -> double;      // Γ(m)Γ(m-1/2-k) / (Γ(m-k)Γ(m-1/2))
auto boundary_coefficient_oracle(int m, int k) -> double; // (-1)^k ((d²/dt²-1)^k φ_m)(0)
auto top_neumann_coefficient(int m) -> double;           // Γ(m)Γ(1/2)/Γ(m-1/2)
auto top_neumann_oracle(int m) -> double;                // d/dt[(d²/dt²-1)^{m-1} φ_m](0), equals (-1)^m times the coefficient

struct HalfSpaceField
{
  SpectralProfile<double> boundary;
  ExtensionMultiplier     mult;

  auto dim() const -> int { return boundary.dim(); }
  auto spectrum_at(double y) const -> SpectralProfile<double>;
  auto trace_at(double y) const -> RadialProfile<double>;
  // U(x, y) at a radius x (uniform grids only: Fourier-Bessel series)
  auto value_at(double x, double y) const -> double;
  // values[i, l] = U(r_i, y_l)
  auto slab(Eigen::ArrayXd const &ys) const -> Eigen::MatrixXd;
};

auto extend(RadialProfile<double> const &u, int m) -> HalfSpaceField;
auto extend(RadialProfile<double> const &u, int n, int m) -> HalfSpaceField;

// Σ_j ŵ_j ρ_j^{2m-1} û_j² · energy_factor(m)
auto extension_energy(HalfSpaceField const &field) -> double;
// ∫∫ |ΔU|² dx dy with the vertical integral done by quadrature per frequency.
auto laplacian_energy(HalfSpaceField const &field) -> double;

// ∂_y U(r_i, 0) from a 5-point one-sided stencil with step h (default 1e-3/ρ_max).
auto neumann_trace_fd(HalfSpaceField const &field, double h = 0) -> RadialProfile<double>;

/*
 * Increase of ∫|∇U|² when a bump b(y) ĝ(ρ) supported in (y0 - h, y0 + h), y0 > h, is added to
 * a harmonic extension (m = 1). Non-negative by the Dirichlet principle.
 */
auto dirichlet_perturbation_gain(HalfSpaceField const &field, SpectralProfile<double> const &g, double y0, double h) -> double;

// Real-space kernel extension c_m y^{2m-1} ∫ u(ξ) / (|x-ξ|² + y²)^{2m-1} dξ for m = 1 (ℝ) and m = 2 (ℝ³, radial u).
auto kernel_extension(std::function<double(double)> const &u, int m, double x, double y, double cutoff = 12) -> double;

} // namespace tml
