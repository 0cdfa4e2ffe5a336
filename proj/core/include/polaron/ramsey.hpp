#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include "polaron/dynamics.hpp"
#include "polaron/hamiltonian.hpp"

namespace polaron {

// Protocol state on the qubit chain x phonon space. Between pulses the state
// lives in the {vacuum + single excitation} blocks; the second pi/2 pulse
// also populates two-excitation components, which are kept exactly (they
// enter the final sigma^z expectation). A pulse that would create a third
// excitation throws std::domain_error.
struct RamseyState {
  std::shared_ptr<const PhononBasis> basis;
  int n_sites = 0;
  Eigen::VectorXcd zero_one;  // [vacuum | site 0 | ... | site N-1], D_ph each
  Eigen::VectorXcd pairs;     // [pair {a,b}, a < b], D_ph each

  double norm() const;
  static int pair_index(int a, int b, int n_sites);  // a < b, 0-based
};

// |G0> = vacuum x zero phonons.
RamseyState ramsey_ground_state(std::shared_ptr<const PhononBasis> basis, int n_sites);

// R_site(pi/2, phi) = [1 + i(s^+ e^{i phi} + s^- e^{-i phi})]/sqrt(2), exact
// and unitary on the supported (<= 2 excitation) space.
void rabi_pulse(RamseyState& state, int site, double phi);

// <sigma^z_site>: +1 on components with the site occupied, -1 otherwise.
double measure_sz(const RamseyState& state, int site);

struct RamseyRecord {
  int n = 0;        // first pulse site, 0-based
  int n_prime = 0;  // second pulse site / measured qubit
  double phi1 = 0.0;
  double phi2 = 0.0;
  Eigen::VectorXd times;
  Eigen::VectorXd m_values;  // M_{nn'}(phi1, phi2, t)
};

struct RamseyOptions {
  std::int64_t dim_budget = 500000;  // max total amplitudes for propagation
  KpmOptions kpm;                    // rescale-window settings
  PropagateOptions propagate;
};

// pulse(n, phi1) -> evolve t -> pulse(n', phi2) -> measure sigma^z_{n'},
// for each grid time (non-decreasing, starting at 0).
RamseyRecord protocol_run(const ModelParams& model, int n, int n_prime, double phi1,
                          double phi2, const Eigen::VectorXd& times,
                          const RamseyOptions& opts = {});

// All (n, n') pairs at fixed pulse phases, sharing the propagated trajectory
// per first-pulse site.
std::vector<RamseyRecord> protocol_run_all_pairs(const ModelParams& model, double phi1,
                                                 double phi2, const Eigen::VectorXd& times,
                                                 const RamseyOptions& opts = {});

struct GreensFunctions {
  Eigen::VectorXd times;
  std::vector<int> k_indices;
  std::vector<double> momenta;
  std::vector<Eigen::MatrixXcd> real_space;  // G_{nn'}(t) per time index, normalized
  Eigen::MatrixXcd g_minus;                  // rows: k, cols: t
  Eigen::MatrixXcd g_plus;                   // = -g_minus on the vacuum ground state
  double normalization = 1.0;                // measured scale; -1/4 for these pulses
};

// Assembles G_{nn'}(t) from the two angle settings (phi1 - phi2 = +-pi/2 and
// phi1 = phi2 mod pi), Fourier-transforms to momentum space and fixes the
// overall constant by the equal-time anticommutator value G_+(k,0) = -i.
// Both record sets must cover all N^2 site pairs on a common grid with t=0.
GreensFunctions reconstruct_greens(const std::vector<RamseyRecord>& quadrature_setting,
                                   const std::vector<RamseyRecord>& inphase_setting,
                                   int n_sites);

struct RamseySpectral {
  std::vector<int> k_indices;
  std::vector<double> momenta;
  Eigen::VectorXd omega;
  Eigen::MatrixXd values;   // rows: k, cols: omega; A(k, omega) estimate
  bool horizon_warning = false;  // exp(-eta*T) > 1e-6: truncated-tail bias
};

// A(k, omega) = -(1/pi) Im int_0^T G_+(k,t) e^{(i omega - eta) t} dt by the
// trapezoid rule; peaks are Lorentzians of HWHM eta.
RamseySpectral spectral_from_ramsey(const GreensFunctions& greens, double eta,
                                    const Eigen::VectorXd& omega_grid);

}  // namespace polaron
