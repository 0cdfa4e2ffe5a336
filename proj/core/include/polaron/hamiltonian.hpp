#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "polaron/hilbert.hpp"
#include "polaron/params.hpp"

namespace polaron {

// Index tables for the sector matvec. They depend only on the basis, not on
// K or the couplings, so one instance serves every sector and every flux.
//
// Convention: the sector state labeled by config m is the translation
// superposition whose representative keeps the excitation on site 0. Acting
// with a real-space term that moves the excitation to site +1/-1 lands on a
// representative with the phonons rotated back by one site and a phase
// e^{+iK}/e^{-iK}.
struct SectorTerms {
  struct Entry {
    std::int32_t src;
    std::int32_t dst;
    double w;
  };

  std::vector<double> diag;                 // total phonon number per config
  std::vector<std::int32_t> rot_left;       // index of the config rotated left
  std::vector<std::int32_t> rot_right;      // index of the config rotated right
  std::vector<Entry> peierls_right;         // (x_1 - x_0) then rotate left
  std::vector<Entry> peierls_left;          // (x_0 - x_{N-1}) then rotate right
  std::vector<Entry> breathing;             // -(x_1 - x_{N-1}), on-site
};

std::shared_ptr<const SectorTerms> build_sector_terms(const PhononBasis& basis);

// Matrix-free Hermitian action of H = H_hop + H_ph + H_eph in one K sector,
// in units of hbar*delta_omega. Cutoff overflow is projected out, which
// keeps the operator Hermitian on the truncated space. Immutable after
// construction; apply() is re-entrant.
class SectorOperator {
 public:
  SectorOperator(KSector sector, ModelParams model);
  SectorOperator(KSector sector, ModelParams model,
                 std::shared_ptr<const SectorTerms> terms);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(sector_.dim()); }
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& in) const;

  const KSector& sector() const { return sector_; }
  const ModelParams& model() const { return model_; }

  // For N = 2 the breathing displacements coincide and the term vanishes
  // identically; callers may want to flag this in run metadata.
  bool breathing_degenerate() const { return model_.n_sites == 2; }

 private:
  KSector sector_;
  ModelParams model_;
  std::shared_ptr<const SectorTerms> terms_;
};

// Block action on {vacuum + single excitation} x phonons, used by the Ramsey
// simulator. Layout: [vacuum | site 0 | site 1 | ...], each block of size
// D_ph. The vacuum block carries the free-phonon Hamiltonian only. Supports
// open boundaries (absent neighbor displacements enter as zero).
class RealSpaceOperator {
 public:
  RealSpaceOperator(std::shared_ptr<const PhononBasis> basis, ModelParams model);

  Eigen::Index dim() const;
  Eigen::Index vacuum_offset() const { return 0; }
  Eigen::Index site_offset(int site) const;  // 0-based site

  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& in) const;

  const PhononBasis& basis() const { return *basis_; }
  const ModelParams& model() const { return model_; }

 private:
  std::shared_ptr<const PhononBasis> basis_;
  ModelParams model_;
};

// max |<u|Hv> - conj(<v|Hu>)| over `trials` random unit pairs.
template <class Op>
double hermiticity_check(const Op& op, int trials, std::uint64_t seed = 12345) {
  if (trials < 1) throw std::invalid_argument("hermiticity_check: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const Eigen::Index n = op.dim();
  Eigen::VectorXcd u(n), v(n), hu(n), hv(n);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (Eigen::Index i = 0; i < n; ++i) {
      u[i] = {gauss(rng), gauss(rng)};
      v[i] = {gauss(rng), gauss(rng)};
    }
    u.normalize();
    v.normalize();
    op.apply(v, hv);
    op.apply(u, hu);
    const std::complex<double> a = u.dot(hv);         // <u|Hv>
    const std::complex<double> b = v.dot(hu);         // <v|Hu>
    worst = std::max(worst, std::abs(a - std::conj(b)));
  }
  return worst;
}

}  // namespace polaron
