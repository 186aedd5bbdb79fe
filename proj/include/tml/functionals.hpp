#pragma once

#include "spectral.hpp"

namespace tml {

struct FunctionalValue
{
  double value = 0;
  bool   overflow = false;
  double numerator = 0, denominator = 0;
};

enum class GrowthDenominator
{
  power,      // (1 + |u|)^p
  one_plus_sq // 1 + |u|²
};

// e^x - 1 - x without cancellation
auto expm1_minus_x(double x) -> double;
// Φ(t) = e^t - Σ_{j ≤ k} t^j / j!
auto exp_tail(double t, int k) -> double;
inline auto psi_fn(double tau) -> double { return expm1_minus_x(tau); }

// ∫ (exp(β u²) - 1) / den(u) dx, clamped; `overflow` set when any exponent hit the clamp.
auto exp_integral(RadialProfile<double> const &u, double beta, double p = 0, GrowthDenominator d = GrowthDenominator::power) -> FunctionalValue;

// F_β(u) = ∫ (exp(β u²) - 1) dx / ‖u‖₂²
auto tm_ratio(RadialProfile<double> const &u, double beta) -> FunctionalValue;
auto exact_growth_ratio(RadialProfile<double> const &u, double beta, double p, GrowthDenominator d = GrowthDenominator::power)
  -> FunctionalValue;

// Critical n = 3 trace functionals, β = 12π² in the exponent.
auto g_lambda(double t, double lambda) -> double;
auto G_lambda(RadialProfile<double> const &u, double lambda) -> double;
auto J_lambda(RadialProfile<double> const &u, double lambda) -> double;
// I_λ of the bi-harmonic lift, bulk term from the extension energy.
auto i_lambda_via_trace(RadialProfile<double> const &v, double lambda) -> double;

/*
 * w(s) = (n A / 2)^{1/2} u(s^{2/n}) on a two-dimensional log grid s ∈ [s_min, R^{n/2}].
 * The evaluation matrices (values and dw/dlog s) are built once per source grid.
 */
class RadialReduction
{
public:
  RadialReduction(PlanPtr<double> source, Index n_out = 1024, double s_min = 1e-8, double A = 0);

  auto source() const -> PlanPtr<double> const & { return source_; }
  auto target() const -> PlanPtr<double> const & { return target_; }
  auto constant() const -> double { return A_; }

  auto apply(RadialProfile<double> const &u) const -> RadialProfile<double>;
  // 2π ∫ |w'(s)|² s ds
  auto gradient_energy(RadialProfile<double> const &u) const -> double;
  // ∫ w² s ds on the target grid and (n² A / 4) ∫ u² r^{n-1} dr on the source grid
  auto l2_identity(RadialProfile<double> const &u) const -> std::pair<double, double>;

private:
  PlanPtr<double> source_, target_;
  double          A_;
  Eigen::MatrixXd values_, slopes_;
};

auto radial_reduction(RadialProfile<double> const &u) -> RadialProfile<double>;

struct HardyRellich
{
  double lhs = 0, rhs = 0;
  auto   margin() const -> double { return lhs - rhs; }
};

// ∫|(-Δ)^{n/4}u|² versus 2^{n-2}Γ²(n/2) ∫ |∇u|² / |x|^{n-2}; uniform grids only.
auto hardy_rellich(RadialProfile<double> const &u) -> HardyRellich;
auto hardy_rellich_margin(RadialProfile<double> const &u, int n) -> double;

struct RearrangementComparison
{
  double lhs = 0, rhs = 0;
  bool   overflow = false;
};

// Both sides of the rearrangement comparison with the 1 + |u|² denominator.
auto rearrangement_comparison(RadialProfile<double> const &u, double beta) -> RearrangementComparison;

} // namespace tml
