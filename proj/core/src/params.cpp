#include "polaron/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polaron/errors.hpp"

namespace polaron {

namespace {
constexpr double kPi = std::numbers::pi;
}

void DeviceParams::validate() const {
  if (!(phi_dc > 0.0 && phi_dc < kPi))
    throw std::domain_error("DeviceParams: phi_dc must lie in (0, pi)");
  if (!(delta_omega_over_2pi > 0.0))
    throw std::domain_error("DeviceParams: delta_omega_over_2pi must be positive");
  // delta_theta_r = 0 is the decoupled resonator limit (g = 0) and is allowed.
  if (!(delta_theta_r >= 0.0))
    throw std::domain_error("DeviceParams: delta_theta_r must be non-negative");
  if (!(ej_scale_over_2pi > 0.0))
    throw std::domain_error("DeviceParams: ej_scale_over_2pi must be positive");
}

void ModelParams::validate() const {
  if (n_sites < 2) throw std::domain_error("ModelParams: n_sites must be >= 2");
  if (n_ph_max < 0) throw std::domain_error("ModelParams: n_ph_max must be >= 0");
  if (!(t0 > 0.0)) throw std::domain_error("ModelParams: t0 must be positive");
  if (!(g >= 0.0)) throw std::domain_error("ModelParams: g must be non-negative");
}

double bessel_j0(double x) {
  x = std::abs(x);
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 64; ++m) {
    term *= -q / (static_cast<double>(m) * m);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_j1(double x) {
  const double sign = x < 0 ? -1.0 : 1.0;
  x = std::abs(x);
  const double q = 0.25 * x * x;
  double term = 0.5 * x, sum = term;
  for (int m = 1; m < 64; ++m) {
    term *= -q / (static_cast<double>(m) * (m + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sign * sum;
}

std::vector<double> bessel_jn_array(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("bessel_jn_array: n_max must be >= 0");
  if (x < 0) throw std::invalid_argument("bessel_jn_array: x must be >= 0");
  std::vector<double> j(n_max + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  // Downward recurrence from well above both n_max and the turning point.
  const int start = n_max + static_cast<int>(std::ceil(x)) + 60;
  double jp = 0.0, jc = 1e-300, even_sum = 0.0;
  for (int n = start; n >= 0; --n) {
    const double jm = (2.0 * (n + 1) / x) * jc - jp;
    jp = jc;
    jc = jm;
    if (std::abs(jc) > 1e280) {  // rescale mid-run to avoid overflow
      const double s = 1e-280;
      jc *= s;
      jp *= s;
      even_sum *= s;
      for (auto& v : j) v *= s;
    }
    if (n <= n_max) j[n] = jc;
    if (n > 0 && n % 2 == 0) even_sum += jc;
  }
  const double norm = jc + 2.0 * even_sum;  // J_0 + 2 sum_{k>=1} J_{2k} = 1
  for (auto& v : j) v /= norm;
  return j;
}

double effective_hopping(const DeviceParams& dev) {
  dev.validate();
  const double flux_factor = 1.0 + std::cos(dev.phi_dc);
  if (flux_factor <= std::numeric_limits<double>::min())
    throw std::domain_error("effective_hopping: 1 + cos(phi_dc) underflows");
  return 2.0 * bessel_j0(kPi / 2.0) * dev.ej_scale_over_2pi * flux_factor;
}

double coupling_g(const DeviceParams& dev) {
  dev.validate();
  return dev.ej_scale_over_2pi * bessel_j1(kPi / 2.0) * dev.delta_theta_r /
         dev.delta_omega_over_2pi;
}

double lambda_from_flux(const DeviceParams& dev) {
  dev.validate();
  const double flux_factor = 1.0 + std::cos(dev.phi_dc);
  if (flux_factor <= std::numeric_limits<double>::min())
    throw std::domain_error("lambda_from_flux: 1 + cos(phi_dc) underflows");
  const double g = coupling_g(dev);
  return 1.5 * g * bessel_j1(kPi / 2.0) * dev.delta_theta_r /
         (bessel_j0(kPi / 2.0) * flux_factor);
}

ModelParams model_from_device(const DeviceParams& dev, int n_sites, int n_ph_max,
                              Boundary boundary) {
  ModelParams model;
  model.n_sites = n_sites;
  model.n_ph_max = n_ph_max;
  model.t0 = effective_hopping(dev) / dev.delta_omega_over_2pi;
  model.g = coupling_g(dev);
  model.boundary = boundary;
  model.validate();
  return model;
}

CouplingSummary coupling_summary(const ModelParams& model) {
  model.validate();
  return {3.0 * model.g * model.g / model.t0, model.t0 > 1.0, 2.0 * model.g};
}

std::complex<double> eph_vertex(double k, double q, double g) {
  return {0.0, 2.0 * g * (std::sin(k) + std::sin(q) - std::sin(k + q))};
}

double lambda_general(const VertexFn& vertex, double t_e, double omega_ph, double rel_tol,
                      int max_grid) {
  if (!(t_e > 0.0) || !(omega_ph > 0.0))
    throw std::domain_error("lambda_general: t_e and omega_ph must be positive");

  auto midpoint_average = [&](int m) {
    const double h = 2.0 * kPi / m;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      const double k = -kPi + (i + 0.5) * h;
      for (int l = 0; l < m; ++l) {
        const double q = -kPi + (l + 0.5) * h;
        sum += std::norm(vertex(k, q));
      }
    }
    return sum / (static_cast<double>(m) * m);
  };

  double prev = midpoint_average(16);
  for (int m = 32; m <= max_grid; m *= 2) {
    const double cur = midpoint_average(m);
    if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-30) ||
        (cur == 0.0 && prev == 0.0))
      return cur / (2.0 * t_e * omega_ph);
    prev = cur;
  }
  throw ConvergenceError("lambda_general: quadrature did not converge", prev, prev);
}

}  // namespace polaron
