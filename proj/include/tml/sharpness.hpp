#pragma once

#include "functionals.hpp"

#include <vector>

namespace tml {

// c |x|^{-n/2} on the annulus εr < |x| < r, zero elsewhere.
struct MoserProfile
{
  double                eps = 0.5, r = 1;
  int                   n = 1;
  double                amplitude = 0;
  Index                 inside = 0; // nodes inside the annulus
  RadialProfile<double> profile;
};

auto moser_profile(double eps, double r, int n, PlanPtr<double> const &grid) -> MoserProfile;
// ‖φ_{ε,r}‖₂² = c² ω_{n-1} log(1/ε)
auto moser_l2_closed_form(MoserProfile const &phi) -> double;

struct PolynomialProjection
{
  RadialProfile<double> profile;    // φ - Pφ
  RadialProfile<double> projection; // Pφ, supported on the ball
  Eigen::VectorXd       coeffs;     // in the basis (|x|/r)^{2k}
  double                condition = 0;
  double                orthogonality = 0; // max relative inner product of the residual with the basis
};

/*
 * Weighted least squares on the ball B_r against the radial monomials of even degree ≤ n - 1.
 * Odd radial degrees are omitted: on radial data they add nothing the even ones do not.
 */
auto project_out_polynomials(RadialProfile<double> const &phi, double r) -> PolynomialProjection;

struct RieszLift
{
  RadialProfile<double> psi; // I_{n/2} φ̃ / ‖φ̃‖₂
  double                norm = 0; // ‖φ̃‖₂
  double                truncation = 0;
};

auto riesz_lift(RadialProfile<double> const &phi_tilde, int n) -> RieszLift;

// min over B_{εr/2} of ψ² β(n, n/2) / (n log(1/(εr)))
auto plateau_ratio(RadialProfile<double> const &psi, double eps, double r) -> double;

struct BlowupRecord
{
  int    n = 1;
  double beta = 0, eps = 0, p = 0;
  double ratio = 0;
  bool   overflow = false;
  double plateau = 0;
  double l2_lift = 0;
};

// Records ordered by (β, p, ε decreasing).
auto blowup_table(int n, std::vector<double> const &betas, std::vector<double> const &eps, std::vector<double> const &ps,
                  double r, PlanPtr<double> const &grid) -> std::vector<BlowupRecord>;

// Default sweep grid: log-spaced, R = 40, 4097 nodes.
auto sharpness_grid(int n) -> PlanPtr<double>;

struct SweepSummary
{
  double max_over_min = 0;
  double final_over_initial = 0;
  bool   strictly_increasing = false;
  double slope = 0; // d log(ratio) / d log log(1/ε) over ε ≤ eps_max
  Index  count = 0;
};

auto summarize(std::vector<BlowupRecord> const &records, double beta, double p, double eps_max = 1) -> SweepSummary;

} // namespace tml
