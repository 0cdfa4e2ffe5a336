#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace polaron {

enum class Boundary { periodic, open };

// Device-level knobs of the qubit/resonator array. All frequencies are
// quoted as f = omega/2pi in MHz; fluxes are in units of Phi_0/2pi.
struct DeviceParams {
  double phi_dc = 0.0;                  // dc flux, radians, 0 < phi_dc < pi
  double delta_omega_over_2pi = 0.0;    // effective phonon frequency, MHz
  double delta_theta_r = 0.0;           // resonator flux constant, dimensionless
  double ej_scale_over_2pi = 0.0;       // dphi0^2 * E_J / (2*pi*hbar), MHz

  // Throws std::domain_error if out of range.
  void validate() const;
};

// Dimensionless lattice model. Internal energy unit is hbar*delta_omega,
// so the phonon term has coefficient exactly 1; times are in 1/delta_omega.
struct ModelParams {
  int n_sites = 0;
  int n_ph_max = 0;
  double t0 = 0.0;  // hopping amplitude in units of hbar*delta_omega
  double g = 0.0;   // dimensionless coupling
  Boundary boundary = Boundary::periodic;

  void validate() const;
};

struct CouplingSummary {
  double lambda_eff;    // 3 g^2 / t0 with t0 in units of hbar*delta_omega
  bool adiabatic;       // t0 > hbar*delta_omega
  double vertex_scale;  // 2 g, the prefactor of the vertex in model units
};

// Bessel functions of the first kind, by power series about zero.
// Accurate to ~1e-13 for |x| <= 12, which covers every use in this library;
// larger arguments go through bessel_jn_array.
double bessel_j0(double x);
double bessel_j1(double x);

// J_0(x)..J_n_max(x) by downward (Miller) recurrence with sum-rule
// normalization; stable for any x >= 0 and large orders.
std::vector<double> bessel_jn_array(int n_max, double x);

// Bare-excitation hopping amplitude t0(phi_dc) = E_Jb dphi0^2 (1+cos phi_dc)
// with E_Jb = 2 E_J J0(pi/2), returned as a frequency in MHz.
double effective_hopping(const DeviceParams& dev);

// Dimensionless coupling g from g*hbar*delta_omega = dphi0^2 E_J J1(pi/2) dtheta_r.
double coupling_g(const DeviceParams& dev);

// Effective coupling strength as a function of the dc flux; algebraically
// identical to 3 g^2 hbar delta_omega / t0.
double lambda_from_flux(const DeviceParams& dev);

ModelParams model_from_device(const DeviceParams& dev, int n_sites, int n_ph_max,
                              Boundary boundary = Boundary::periodic);

CouplingSummary coupling_summary(const ModelParams& model);

// Momentum-space coupling vertex 2ig[sin k + sin q - sin(k+q)] in units of
// hbar*delta_omega. Purely imaginary; vanishes identically at k = 0.
std::complex<double> eph_vertex(double k, double q, double g);

using VertexFn = std::function<std::complex<double>(double, double)>;

// Brillouin-zone average <|gamma|^2> / (2 t_e hbar omega_ph) by a midpoint
// tensor rule, refined until the relative change drops below rel_tol.
// Throws ConvergenceError if refinement stalls.
double lambda_general(const VertexFn& vertex, double t_e, double omega_ph,
                      double rel_tol = 1e-8, int max_grid = 1 << 13);

}  // namespace polaron
