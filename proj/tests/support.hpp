#pragma once

#include <doctest.h>

#include <cmath>
#include <numbers>

namespace tml::test {

inline constexpr double pi = std::numbers::pi;

inline auto rel(double a, double b) -> double { return std::abs(a - b) / std::abs(b); }

} // namespace tml::test
