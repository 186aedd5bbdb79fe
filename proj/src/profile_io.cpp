#include "tml/profile_io.hpp"

#include <json.hpp>

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace tml {

auto format_double(double x) -> std::string
{
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_profile_csv(RadialProfile<double> const &u, std::ostream &os)
{
  os << "r,u\n";
  for (Index i = 0; i < u.size(); ++i) {
    os << format_double(u.nodes()[i]) << ',' << format_double(u.values[i]) << '\n';
  }
}

void write_spectrum_csv(SpectralProfile<double> const &f, std::ostream &os)
{
  os << "rho,u_hat\n";
  for (Index i = 0; i < f.size(); ++i) {
    os << format_double(f.nodes()[i]) << ',' << format_double(f.values[i]) << '\n';
  }
}

auto profile_to_json(RadialProfile<double> const &u) -> std::string
{
  auto const    &s = u.plan->spec;
  nlohmann::json j;
  j["n"] = s.n;
  j["R"] = s.R;
  j["N"] = s.N;
  j["scheme"] = scheme_name(s.scheme);
  if (s.scheme == Scheme::log) { j["r_min"] = s.r_min; }
  j["values"] = std::vector<double>(u.values.data(), u.values.data() + u.values.size());
  return j.dump();
}

auto profile_from_json(std::string const &text) -> RadialProfile<double>
{
  nlohmann::json const j = nlohmann::json::parse(text);
  GridSpec             spec;
  spec.n = j.at("n").get<int>();
  spec.R = j.at("R").get<double>();
  spec.N = j.at("N").get<Index>();
  spec.scheme = parse_scheme(j.at("scheme").get<std::string>());
  if (j.contains("r_min")) { spec.r_min = j.at("r_min").get<double>(); }
  auto const values = j.at("values").get<std::vector<double>>();
  if (Index(values.size()) != spec.N) { throw std::invalid_argument("profile JSON: values length differs from N"); }
  auto plan = make_plan<double>(spec);
  return {plan, Eigen::Map<Eigen::ArrayXd const>(values.data(), Index(values.size()))};
}

} // namespace tml
