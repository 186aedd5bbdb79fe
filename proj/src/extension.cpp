#include "tml/extension.hpp"
#include "tml/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace tml {

auto exp_poly(Eigen::ArrayXd const &q, double t) -> double
{
  double acc = 0;
  for (Index i = q.size() - 1; i >= 0; --i) {
    acc = acc * t + q[i];
  }
  return acc * std::exp(-t);
}

auto exp_poly_derivative(Eigen::ArrayXd const &q) -> Eigen::ArrayXd
{
  Eigen::ArrayXd d = -q;
  for (Index i = 1; i < q.size(); ++i) {
    d[i - 1] += double(i) * q[i];
  }
  return d;
}

auto ExtensionMultiplier::derivative_coeffs(int j) const -> Eigen::ArrayXd
{
  if (j < 0) { throw std::invalid_argument("derivative order must be >= 0"); }
  Eigen::ArrayXd q = coeffs;
  for (int i = 0; i < j; ++i) {
    q = exp_poly_derivative(q);
  }
  return q;
}

auto ExtensionMultiplier::shifted_laplacian_coeffs(int k) const -> Eigen::ArrayXd
{
  if (k < 0) { throw std::invalid_argument("power must be >= 0"); }
  Eigen::ArrayXd q = coeffs;
  for (int i = 0; i < k; ++i) {
    q = exp_poly_derivative(exp_poly_derivative(q)) - q;
  }
  return q;
}

auto ExtensionMultiplier::value(double t, int derivative) const -> double { return exp_poly(derivative_coeffs(derivative), t); }

auto multiplier(int m) -> ExtensionMultiplier
{
  if (m < 1) { throw std::invalid_argument("multiplier: order m must be >= 1"); }
  // t^{m-1/2} K_{m-1/2}(t) normalised to 1 at t = 0
  int const      k = m - 1;
  Eigen::ArrayXd c(m);
  double const   norm = std::exp(std::lgamma(k + 1.0) - std::lgamma(2.0 * k + 1.0)) * std::pow(2.0, k);
  for (int i = 0; i <= k; ++i) {
    double const lc = std::lgamma(2.0 * k - i + 1.0) - std::lgamma(k - i + 1.0) - std::lgamma(i + 1.0);
    c[i] = std::exp(lc) * std::pow(2.0, -(k - i)) * norm;
  }
  return {m, c};
}

auto energy_factor(int m) -> double
{
  auto const               phi = multiplier(m);
  std::vector<Eigen::ArrayXd> d(m + 1);
  for (int j = 0; j <= m; ++j) {
    d[j] = phi.derivative_coeffs(j);
  }
  double const             T = 40.0 + 10.0 * m;
  GaussLegendre<double> const gl(20);
  auto integrate = [&](Index panels) {
    auto const [t, w] = gl.composite(0.0, T, panels);
    double sum = 0;
    for (Index i = 0; i < t.size(); ++i) {
      double f = 0;
      for (int j = 0; j <= m; ++j) {
        double const v = exp_poly(d[j], t[i]);
        f += binomial(m, j) * v * v;
      }
      sum += w[i] * f;
    }
    return sum;
  };
  double const fine = integrate(200);
  double const coarse = integrate(100);
  if (!(std::abs(fine - coarse) <= 1e-12 * fine)) { throw std::runtime_error("energy_factor: quadrature did not converge"); }
  return fine;
}

auto boundary_coefficient(int m, int k) -> double
{
  if (m < 1) { throw std::invalid_argument("boundary_coefficient: m must be >= 1"); }
  if (k < 0 || k > (m - 1) / 2) { throw std::invalid_argument("boundary_coefficient: k outside 0..floor((m-1)/2)"); }
  return gamma_fn(double(m)) * gamma_fn(m - 0.5 - k) / (gamma_fn(double(m - k)) * gamma_fn(m - 0.5));
}

auto boundary_coefficient_oracle(int m, int k) -> double
{
  double const v = multiplier(m).shifted_laplacian_coeffs(k)[0];
  return (k % 2 == 0) ? v : -v;
}

auto top_neumann_coefficient(int m) -> double { return trace_energy_ratio(m); }

auto top_neumann_oracle(int m) -> double
{
  return exp_poly_derivative(multiplier(m).shifted_laplacian_coeffs(m - 1))[0];
}

auto HalfSpaceField::spectrum_at(double y) const -> SpectralProfile<double>
{
  if (y < 0) { throw std::invalid_argument("HalfSpaceField: y must be >= 0"); }
  SpectralProfile<double> s = boundary;
  if (y == 0) { return s; }
  auto const &rho = boundary.plan->rho;
  for (Index j = 0; j < s.size(); ++j) {
    s.values[j] *= mult(rho[j] * y);
  }
  return s;
}

auto HalfSpaceField::trace_at(double y) const -> RadialProfile<double>
{
  if (y == 0) { return inverse_transform(boundary); }
  return inverse_transform(spectrum_at(y));
}

auto HalfSpaceField::value_at(double x, double y) const -> double
{
  return (boundary.plan->kernel_row(x) * spectrum_at(y).values).sum();
}

auto HalfSpaceField::slab(Eigen::ArrayXd const &ys) const -> Eigen::MatrixXd
{
  Eigen::MatrixXd out(boundary.size(), ys.size());
  for (Index l = 0; l < ys.size(); ++l) {
    out.col(l) = trace_at(ys[l]).values.matrix();
  }
  return out;
}

auto extend(RadialProfile<double> const &u, int m) -> HalfSpaceField { return {transform(u), multiplier(m)}; }

auto extend(RadialProfile<double> const &u, int n, int m) -> HalfSpaceField
{
  if (u.dim() != n) { throw std::invalid_argument("extend: profile dimension does not match n"); }
  return extend(u, m);
}

auto extension_energy(HalfSpaceField const &field) -> double
{
  auto const &p = *field.boundary.plan;
  double const e = (p.w_hat * p.rho.pow(2 * field.mult.m - 1) * field.boundary.values.square()).sum();
  return e == 0 ? 0.0 : e * energy_factor(field.mult.m);
}

auto laplacian_energy(HalfSpaceField const &field) -> double
{
  // ΔU per frequency is ρ² [(d²/dt² - 1)φ](ρy) û; after t = ρy the vertical integral is ρ³ ∫ q(t)² e^{-2t} dt.
  Eigen::ArrayXd const q = field.mult.shifted_laplacian_coeffs(1);
  GaussLegendre<double> const gl(20);
  auto const [t, w] = gl.composite(0.0, 40.0 + 10.0 * field.mult.m, 200);
  double vertical = 0;
  for (Index i = 0; i < t.size(); ++i) {
    double const v = exp_poly(q, t[i]);
    vertical += w[i] * v * v;
  }
  auto const &p = *field.boundary.plan;
  return vertical * (p.w_hat * p.rho.cube() * field.boundary.values.square()).sum();
}

auto neumann_trace_fd(HalfSpaceField const &field, double h) -> RadialProfile<double>
{
  auto const &rho = field.boundary.plan->rho;
  if (h == 0) { h = 1e-3 / rho.maxCoeff(); }
  if (!(h > 0)) { throw std::invalid_argument("neumann_trace_fd: step must be positive"); }
  constexpr double stencil[5] = {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -0.25};
  // The stencil is linear, so it is applied per frequency before the single inverse transform.
  SpectralProfile<double> d = field.boundary;
  for (Index j = 0; j < d.size(); ++j) {
    double acc = 0;
    for (int k = 0; k < 5; ++k) {
      acc += stencil[k] * field.mult(rho[j] * k * h);
    }
    d.values[j] *= acc / h;
  }
  return inverse_transform(d);
}

auto dirichlet_perturbation_gain(HalfSpaceField const &field, SpectralProfile<double> const &g, double y0, double h) -> double
{
  if (field.mult.m != 1) { throw std::invalid_argument("dirichlet_perturbation_gain: harmonic extensions only"); }
  if (!(h > 0) || !(y0 > h)) { throw std::invalid_argument("dirichlet_perturbation_gain: bump must vanish at y = 0"); }
  require_same_grid(field.boundary.plan, g.plan);
  auto bump = [&](double y, double &db) {
    double const z = (y - y0) / h;
    if (std::abs(z) >= 1) {
      db = 0;
      return 0.0;
    }
    double const e = std::exp(-1 / (1 - z * z));
    db = e * (-2 * z / ((1 - z * z) * (1 - z * z))) / h;
    return e;
  };
  GaussLegendre<double> const gl(20);
  auto const [y, wy] = gl.composite(y0 - h, y0 + h, 64);
  auto const &p = *field.boundary.plan;
  double      gain = 0;
  for (Index j = 0; j < p.N; ++j) {
    double const r2 = p.rho[j] * p.rho[j];
    double const u = field.boundary.values[j], v = g.values[j];
    double       acc = 0;
    for (Index l = 0; l < y.size(); ++l) {
      double       db;
      double const b = bump(y[l], db);
      double const U = field.mult(p.rho[j] * y[l]) * u;
      double const dU = p.rho[j] * field.mult.value(p.rho[j] * y[l], 1) * u;
      double const E = b * v, dE = db * v;
      acc += wy[l] * (r2 * (2 * U * E + E * E) + 2 * dU * dE + dE * dE);
    }
    gain += p.w_hat[j] * acc;
  }
  return gain;
}

auto kernel_extension(std::function<double(double)> const &u, int m, double x, double y, double cutoff) -> double
{
  if (!(y > 0)) { throw std::invalid_argument("kernel_extension: y must be positive"); }
  GaussLegendre<double> const gl(16);
  if (m == 1) {
    double const lo = -cutoff, hi = cutoff;
    Index const  panels = Index(std::ceil((hi - lo) / std::min(0.5, y)));
    auto const [xi, w] = gl.composite(lo, hi, panels);
    double sum = 0;
    for (Index i = 0; i < xi.size(); ++i) {
      double const d = x - xi[i];
      sum += w[i] * u(std::abs(xi[i])) * y / (d * d + y * y);
    }
    return sum / pi_v<double>;
  }
  if (m == 2) {
    Index const panels = Index(std::ceil(cutoff / std::min(0.5, y)));
    auto const [r, w] = gl.composite(0.0, cutoff, panels);
    double sum = 0;
    for (Index i = 0; i < r.size(); ++i) {
      // ∫ over the sphere of radius r of (|x-ξ|² + y²)^{-3}: 2π r² · 2A / (A² - B²)²
      double const A = x * x + r[i] * r[i] + y * y, B = 2 * x * r[i];
      sum += w[i] * u(r[i]) * 2 * pi_v<double> * r[i] * r[i] * 2 * A / ((A * A - B * B) * (A * A - B * B));
    }
    return 4 / (pi_v<double> * pi_v<double>) * y * y * y * sum;
  }
  throw std::invalid_argument("kernel_extension: only m = 1 and m = 2 are available");
}

} // namespace tml
