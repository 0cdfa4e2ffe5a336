#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "polaron/hilbert.hpp"
#include "polaron/params.hpp"

namespace polaron {

// Dense exact diagonalization for small instances; ground truth for the
// matrix-free and KPM paths. All builders here walk the real-space terms
// directly and assemble explicit symmetry-adapted vectors, deliberately not
// sharing code with SectorOperator.

struct SectorSpectrum {
  int k_index = 0;
  double K = 0.0;
  Eigen::VectorXd energies;  // ascending
  Eigen::VectorXd weights;   // |<psi_j|c^dag_K|0>|^2, sum = 1
};

struct OracleOptions {
  std::int64_t dense_budget = 4000;  // max sector dimension for dense work
};

// Single-excitation block of H in the product basis |site n> x |m>, real
// symmetric, N*D_ph x N*D_ph. Index = site*D_ph + config.
Eigen::MatrixXd build_real_space_matrix(const ModelParams& model, const PhononBasis& basis);

// Dense sector Hamiltonian <K,m'|H|K,m> assembled by sandwiching the real
// space matrix between explicit symmetry-adapted basis vectors. Periodic
// boundary only.
Eigen::MatrixXcd build_sector_matrix(const ModelParams& model, const PhononBasis& basis,
                                     int k_index);

SectorSpectrum diagonalize_sector(const ModelParams& model, int k_index,
                                  const OracleOptions& opts = {});

// Lorentzian-regularized Lehmann sum A(omega) = sum_j w_j (eta/pi)/((omega-E_j)^2+eta^2).
Eigen::VectorXd lehmann_spectral(const SectorSpectrum& spectrum, double eta,
                                 const Eigen::VectorXd& omega);

struct ScanPoint {
  double lambda_eff = 0.0;
  double t0 = 0.0;
  int k_gs_index = 0;          // argmin over j >= 0; ties broken toward smaller |K|
  double K_gs = 0.0;
  bool degenerate_pair = false;  // true when K_gs is neither 0 nor pi
  double e0_k0 = 0.0;          // ground energy of the K = 0 sector
  double e0_best_nonzero = 0.0;
  double gap = 0.0;            // e0_best_nonzero - e0_k0; negative past the crossing
};

// Ground-state momentum scan at fixed g, varying t0 = 3 g^2 / lambda.
std::vector<ScanPoint> ground_state_scan(const ModelParams& base,
                                         std::span<const double> lambdas,
                                         const OracleOptions& opts = {});

// G_+(k, t) = -i sum_j w_j exp(-i E_j t) for t >= 0, zero for t < 0.
// Periodic models use the K-sector decomposition; open ones diagonalize the
// full single-excitation block with the Fourier vector N^{-1/2} sum e^{ikn}|n,0>.
std::vector<std::complex<double>> direct_greens(const ModelParams& model, int k_index,
                                                const Eigen::VectorXd& times,
                                                const OracleOptions& opts = {});

}  // namespace polaron
