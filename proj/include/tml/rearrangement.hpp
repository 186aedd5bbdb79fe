#pragma once

#include "spectral.hpp"

namespace tml {

// Norms of a profile before and after Fourier rearrangement.
struct RearrangementReport
{
  RadialProfile<double> input, output;
  double                s = 0.75; // seminorm order
  double                l2_before = 0, l2_after = 0;
  double                semi_before = 0, semi_after = 0;
  double                l4_before = 0, l4_after = 0;
  double                l3_before = 0, l3_after = 0; // recorded only

  auto delta_l2() const -> double { return l2_after - l2_before; }
  auto delta_seminorm() const -> double { return semi_after - semi_before; }
  auto delta_l4() const -> double { return l4_after - l4_before; }
  auto delta_l3() const -> double { return l3_after - l3_before; }
};

/*
 * Radially nonincreasing rearrangement of |f| with respect to the frequency weights.
 * The sorted step function is transported onto the cells in ρ order by cumulative weight;
 * each cell receives the root mean square over its measure interval, so Σ ŵ f² is exact.
 */
auto schwarz_rearrange(SpectralProfile<double> const &f) -> SpectralProfile<double>;

// Measure of {|f| > t} with respect to the frequency weights.
auto distribution_function(SpectralProfile<double> const &f, double t) -> double;

auto fourier_rearrange(RadialProfile<double> const &u, double s = 0.75) -> std::pair<RadialProfile<double>, RearrangementReport>;

// Report for an already computed pair (u, u♯).
auto rearrangement_report(RadialProfile<double> const &u, RadialProfile<double> const &v, double s) -> RearrangementReport;

} // namespace tml
