#pragma once

#include <Eigen/Dense>
#include <vector>

#include "polaron/kpm.hpp"

namespace polaron {

// Loschmidt amplitude G(t) = <start|psi(t)> and echo L(t) = |G(t)|^2 for the
// bare-excitation Bloch start state; times in units of 1/delta_omega.
struct EchoTrace {
  int k_index = 0;
  double k = 0.0;
  Eigen::VectorXd times;
  Eigen::VectorXcd amplitude;
  Eigen::VectorXd echo;
  double sum_rule_defect = 0.0;
  bool normalization_suspect = false;  // set when the source sum rule is off by > 1e-2
};

// G(t) = sum_j w_j exp(-i omega_j t) with the node weights of the spectral
// reconstruction.
EchoTrace echo_from_spectrum(const SpectralResult& spec, const Eigen::VectorXd& times);

struct PropagateOptions {
  double coeff_cutoff = 1e-14;  // truncate the Bessel series at this magnitude
  int max_order = 4096;         // per chunk; larger tau steps are split
};

namespace detail {
// Chebyshev coefficients of exp(-i x tau) on [-1, 1]: c_n = (2 - delta_n0) (-i)^n J_n(tau),
// truncated at |J_n| < cutoff past n = tau.
std::vector<std::complex<double>> propagator_coefficients(double tau, double cutoff,
                                                          int max_order);
}  // namespace detail

// psi <- exp(-i H dt) psi with H = a*Htilde + b given by `rescale`; Bessel
// coefficient series in Htilde, phase-corrected for the shift. Steps whose
// rescaled duration exceeds the order budget are split into chunks.
template <class Op>
void chebyshev_propagate(const Op& op, const RescaleInfo& rescale, Eigen::VectorXcd& psi,
                         double dt, const PropagateOptions& opts = {}) {
  if (dt < 0) throw std::invalid_argument("chebyshev_propagate: dt must be >= 0");
  if (dt == 0) return;
  const double a = rescale.scale();
  const double b = rescale.shift();
  const double tau_budget = std::max(16.0, 0.7 * opts.max_order);
  const int n_chunks = std::max(1, static_cast<int>(std::ceil(a * dt / tau_budget)));
  const double dt_c = dt / n_chunks;
  const double tau = a * dt_c;

  const auto coeff = detail::propagator_coefficients(tau, opts.coeff_cutoff, opts.max_order);
  const std::complex<double> phase = std::exp(std::complex<double>(0.0, -b * dt_c));
  const auto h = scaled(op, rescale);

  Eigen::VectorXcd t_prev(psi.size()), t_cur(psi.size()), t_next(psi.size()), acc(psi.size());
  for (int c = 0; c < n_chunks; ++c) {
    t_prev = psi;                 // T_0 psi
    h.apply(t_prev, t_cur);       // T_1 psi
    acc = coeff[0] * t_prev + coeff[1] * t_cur;
    for (std::size_t n = 2; n < coeff.size(); ++n) {
      h.apply(t_cur, t_next);
      t_next = 2.0 * t_next - t_prev;
      acc += coeff[n] * t_next;
      t_prev.swap(t_cur);
      t_cur.swap(t_next);
    }
    psi = phase * acc;
  }
}

struct EchoOptions {
  KpmOptions kpm;               // bounds/seed settings for the rescale window
  PropagateOptions propagate;
};

// Survival amplitude by direct Chebyshev time propagation of the Bloch start
// vector; times must be non-decreasing and >= 0.
EchoTrace echo_direct(const ModelParams& model, int k_index, const Eigen::VectorXd& times,
                      const EchoOptions& opts = {});
EchoTrace echo_direct(const SectorOperator& op, const Eigen::VectorXd& times,
                      const EchoOptions& opts = {});

}  // namespace polaron
