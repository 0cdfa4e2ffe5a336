#include "polaron/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "polaron/params.hpp"

namespace polaron {

EchoTrace echo_from_spectrum(const SpectralResult& spec, const Eigen::VectorXd& times) {
  EchoTrace out;
  out.k_index = spec.k_index;
  out.k = spec.k;
  out.times = times;
  out.sum_rule_defect = spec.sum_rule_defect;
  out.normalization_suspect = spec.sum_rule_defect > 1e-2;
  out.amplitude.resize(times.size());
  out.echo.resize(times.size());
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    std::complex<double> amp = 0.0;
    const double t = times[i];
    for (Eigen::Index j = 0; j < spec.omega.size(); ++j)
      amp += spec.weights[j] *
             std::complex<double>(std::cos(spec.omega[j] * t), -std::sin(spec.omega[j] * t));
    out.amplitude[i] = amp;
    out.echo[i] = std::norm(amp);
  }
  return out;
}

namespace detail {

std::vector<std::complex<double>> propagator_coefficients(double tau, double cutoff,
                                                          int max_order) {
  // Past the turning point J_n(tau) decays superexponentially; the Airy
  // transition zone is O(tau^{1/3}) wide.
  int order = static_cast<int>(std::ceil(tau + 14.0 * std::cbrt(tau + 1.0) + 20.0));
  order = std::min(order, max_order);
  const auto j = bessel_jn_array(order, tau);

  int cut = order;
  while (cut > static_cast<int>(std::ceil(tau)) && cut > 1 &&
         std::abs(j[cut - 1]) < cutoff && std::abs(j[cut]) < cutoff)
    --cut;

  std::vector<std::complex<double>> c(cut + 1);
  const std::complex<double> mi(0.0, -1.0);
  std::complex<double> mi_pow = 1.0;
  for (int n = 0; n <= cut; ++n) {
    c[n] = (n == 0 ? 1.0 : 2.0) * mi_pow * j[n];
    mi_pow *= mi;
  }
  return c;
}

}  // namespace detail

EchoTrace echo_direct(const SectorOperator& op, const Eigen::VectorXd& times,
                      const EchoOptions& opts) {
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1]))
      throw std::invalid_argument("echo_direct: times must be non-decreasing and >= 0");
  }
  const RescaleInfo window = rescale_window(op, opts.kpm);
  const Eigen::VectorXcd start = bloch_start_vector(op.sector());
  Eigen::VectorXcd psi = start;

  EchoTrace out;
  out.k_index = op.sector().j;
  out.k = op.sector().K;
  out.times = times;
  out.amplitude.resize(times.size());
  out.echo.resize(times.size());

  double t_prev = 0.0;
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    chebyshev_propagate(op, window, psi, times[i] - t_prev, opts.propagate);
    t_prev = times[i];
    const std::complex<double> amp = start.dot(psi);  // <start|psi(t)>
    out.amplitude[i] = amp;
    out.echo[i] = std::norm(amp);
  }
  return out;
}

EchoTrace echo_direct(const ModelParams& model, int k_index, const Eigen::VectorXd& times,
                      const EchoOptions& opts) {
  auto basis = std::make_shared<const PhononBasis>(model.n_sites, model.n_ph_max);
  const SectorOperator op(make_sector(std::move(basis), k_index), model);
  return echo_direct(op, times, opts);
}

}  // namespace polaron
