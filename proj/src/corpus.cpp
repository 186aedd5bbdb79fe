#include "tml/corpus.hpp"

#include <cmath>

namespace tml {

auto smooth_profile(PlanPtr<double> const &plan, std::vector<SmoothTerm> const &terms) -> RadialProfile<double>
{
  return sample(plan, [&terms](double r) {
    double v = 0;
    for (auto const &t : terms) {
      v += t.amplitude * std::exp(-r * r / (2 * t.width * t.width)) * std::cos(t.frequency * r);
    }
    return v;
  });
}

auto random_terms(std::mt19937_64 &rng) -> std::vector<SmoothTerm>
{
  int const               count = 1 + int(unit_uniform(rng) * 3);
  std::vector<SmoothTerm> terms;
  for (int k = 0; k < count; ++k) {
    double a = 2 * unit_uniform(rng) - 1;
    if (k == 0) { a = (a < 0 ? -1 : 1) * (0.3 + 0.7 * std::abs(a)); }
    double const width = 0.5 + 2 * unit_uniform(rng);
    double const freq = 3 * unit_uniform(rng);
    terms.push_back({a, width, freq});
  }
  return terms;
}

auto smooth_corpus(PlanPtr<double> const &plan, Index count, std::uint64_t seed) -> std::vector<RadialProfile<double>>
{
  std::mt19937_64                    rng(seed);
  std::vector<RadialProfile<double>> out;
  out.reserve(std::size_t(count));
  for (Index i = 0; i < count; ++i) {
    out.push_back(smooth_profile(plan, random_terms(rng)));
  }
  return out;
}

auto gaussian(PlanPtr<double> const &plan, double width, double amplitude) -> RadialProfile<double>
{
  return sample(plan, [=](double r) { return amplitude * std::exp(-r * r / (2 * width * width)); });
}

} // namespace tml
