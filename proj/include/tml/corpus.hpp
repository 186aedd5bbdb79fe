#pragma once

#include "spectral.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tml {

// Uniform double in [0, 1) from the top 53 bits; platform independent, unlike std distributions.
inline auto unit_uniform(std::mt19937_64 &rng) -> double { return double(rng() >> 11) * 0x1.0p-53; }

struct SmoothTerm
{
  double amplitude, width, frequency;
};

// u(r) = Σ a_k exp(-r²/(2σ_k²)) cos(κ_k r)
auto smooth_profile(PlanPtr<double> const &plan, std::vector<SmoothTerm> const &terms) -> RadialProfile<double>;
auto random_terms(std::mt19937_64 &rng) -> std::vector<SmoothTerm>;
auto smooth_corpus(PlanPtr<double> const &plan, Index count, std::uint64_t seed) -> std::vector<RadialProfile<double>>;

auto gaussian(PlanPtr<double> const &plan, double width = 1, double amplitude = 1) -> RadialProfile<double>;

} // namespace tml
