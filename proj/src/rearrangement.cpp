#include "tml/rearrangement.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace tml {

auto schwarz_rearrange(SpectralProfile<double> const &f) -> SpectralProfile<double>
{
  Index const N = f.size();
  auto const &wh = f.plan->w_hat;
  Eigen::ArrayXd const a = f.values.abs();
  std::vector<Index>   order(N);
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return a[i] > a[j]; });

  SpectralProfile<double> out{f.plan, Eigen::ArrayXd::Zero(N)};
  Index                   k = 0;      // current source cell in sorted order
  double                  left = wh[order[0]]; // unused source measure of cell k
  for (Index j = 0; j < N; ++j) {
    double need = wh[j], mass = 0;
    while (need > 0 && k < N) {
      double const take = std::min(need, left);
      mass += take * a[order[k]] * a[order[k]];
      need -= take;
      left -= take;
      if (left <= 0 && ++k < N) { left = wh[order[k]]; }
    }
    out.values[j] = std::sqrt(mass / wh[j]);
  }
  return out;
}

auto distribution_function(SpectralProfile<double> const &f, double t) -> double
{
  return (f.values.abs() > t).select(f.plan->w_hat, 0.0).sum();
}

auto rearrangement_report(RadialProfile<double> const &u, RadialProfile<double> const &v, double s) -> RearrangementReport
{
  RearrangementReport rep{u, v, s};
  rep.l2_before = lp_norm(u, 2.0);
  rep.l2_after = lp_norm(v, 2.0);
  rep.semi_before = sobolev_seminorm(u, s);
  rep.semi_after = sobolev_seminorm(v, s);
  rep.l4_before = lp_norm(u, 4.0);
  rep.l4_after = lp_norm(v, 4.0);
  rep.l3_before = lp_norm(u, 3.0);
  rep.l3_after = lp_norm(v, 3.0);
  return rep;
}

auto fourier_rearrange(RadialProfile<double> const &u, double s) -> std::pair<RadialProfile<double>, RearrangementReport>
{
  auto v = inverse_transform(schwarz_rearrange(transform(u)));
  auto rep = rearrangement_report(u, v, s);
  return {std::move(v), std::move(rep)};
}

} // namespace tml
