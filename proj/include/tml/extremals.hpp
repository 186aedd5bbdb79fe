#pragma once

#include "extension.hpp"
#include "functionals.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tml {

struct NormalizedProfile
{
  RadialProfile<double> profile;
  double                amplitude = 1; // factor applied to reach unit critical seminorm
  double                dilation = 1;  // v(x) = amplitude · u(dilation · x)
};

// Unit critical seminorm by amplitude, then unit L² by the critical-invariant dilation ‖·‖₂^{2/n}.
auto normalize_critical(RadialProfile<double> const &u) -> NormalizedProfile;

struct MaximizerOptions
{
  double        margin = 0.05; // required relative gap below the sharp constant
  int           rearrange_every = 5;
  double        tolerance = 1e-9; // relative F gain per step
  int           max_iterations = 5000;
  std::uint64_t seed = 0;
};

struct MaximizerResult
{
  double                beta = 0;
  RadialProfile<double> profile;
  double                F = 0, F_initial = 0;
  double                el_residual = 0;
  std::vector<double>   trace; // F after every accepted update
  int                   iterations = 0;
  bool                  overflow = false;
  std::uint64_t         seed = 0;
};

/*
 * Ascent on F_β over unit critical seminorm: preconditioned gradient step in frequency space,
 * amplitude renormalisation, backtracking on F, and a Fourier rearrangement every few steps.
 */
auto maximize_subcritical(int n, double beta, RadialProfile<double> const &init, MaximizerOptions const &opts = {}) -> MaximizerResult;

struct NehariFailure : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Root s₀ of h(s) = G_λ(s u); throws NehariFailure when the bracket runs into the exponent clamp.
auto nehari_scale(RadialProfile<double> const &u, double lambda) -> double;

struct GroundStateOptions
{
  GridSpec            grid{3, 40, 256, Scheme::uniform};
  std::vector<double> widths{0.5, 1, 2};
  int                 memory = 30; // 0 selects plain preconditioned gradient descent
  int                 max_iterations = 4000;
  double              tolerance = 1e-13; // relative objective change
  double              kappa = 1;         // weight of the L² gauge penalty
  std::uint64_t       seed = 0;
};

struct GroundStateStart
{
  double width = 0, A = 0, residual = 0;
  int    iterations = 0;
  bool   ok = false;
};

struct GroundStateResult
{
  double                        lambda = 0;
  double                        A = 0;        // estimate of inf ‖(-Δ)^{3/4}u‖² on G_λ = 0
  double                        m_lambda = 0; // J_λ at the minimiser
  RadialProfile<double>         profile;      // minimiser, on the constraint
  double                        residual = 0; // |G_λ(profile)|
  double                        scale = 0;    // (1 - λ)‖profile‖₂²
  double                        spread = 0;   // (max - min) / min over successful starts
  std::vector<GroundStateStart> starts;
  std::uint64_t                 seed = 0;
};

auto ground_state(double lambda, GroundStateOptions const &opts = {}) -> GroundStateResult;

struct LiftedGroundState
{
  HalfSpaceField field;
  double         I = 0, J = 0;
  double         bulk = 0, seminorm_sq = 0;
  double         neumann = 0; // max |∂_y V(·, 0)| by finite differences
};

auto lift_ground_state(GroundStateResult const &result) -> LiftedGroundState;

} // namespace tml
