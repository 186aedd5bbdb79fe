#pragma once

#include "spectral.hpp"

#include <iosfwd>
#include <string>

namespace tml {

// %.17g, '.' decimal separator regardless of locale
auto format_double(double x) -> std::string;

void write_profile_csv(RadialProfile<double> const &u, std::ostream &os);
void write_spectrum_csv(SpectralProfile<double> const &f, std::ostream &os);

// {n, R, N, scheme, r_min, values}; the grid is rebuilt from its parameters on read.
auto profile_to_json(RadialProfile<double> const &u) -> std::string;
auto profile_from_json(std::string const &text) -> RadialProfile<double>;

} // namespace tml
