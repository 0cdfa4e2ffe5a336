#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

namespace polaron {

// Phonon occupation numbers (m_0, ..., m_{N-1}), one entry per site.
using PhononConfig = std::vector<int>;

// Truncated phonon basis: all configs with total occupation <= n_ph_max.
// Size is binomial(n_ph_max + N, N). Configs are ordered by total phonon
// number, then by occupations with the lower site index filled first, so
// the zero config has index 0 and indices are stable across runs.
//
// index_of/config are a perfect rank/unrank pair built on the combinatorial
// number system; no list of size D_ph is ever materialized.
class PhononBasis {
 public:
  static constexpr std::int64_t default_max_dim = std::int64_t(1) << 31;

  PhononBasis(int n_sites, int n_ph_max, std::int64_t max_dim = default_max_dim);

  // binomial(n_ph_max + n_sites, n_sites), exact; throws CapacityError on
  // 64-bit overflow.
  static std::int64_t dimension(int n_sites, int n_ph_max);

  int n_sites() const { return n_sites_; }
  int n_ph_max() const { return n_ph_max_; }
  std::int64_t size() const { return dim_; }

  std::int64_t index_of(const PhononConfig& config) const;  // O(N + total)
  PhononConfig config(std::int64_t index) const;
  void config(std::int64_t index, PhononConfig& out) const;

 private:
  std::int64_t binom(int n, int k) const;  // 0 when out of range
  int n_sites_;
  int n_ph_max_;
  std::int64_t dim_;
  std::vector<std::int64_t> binom_;  // (n_ph_max + N + 1) x (N + 1), row-major
  int binom_cols_;
};

// Cyclic translation by `shift` sites: site j of the result carries the
// occupation previously at site j - shift (mod N). translate(c, 0) == c and
// shifts compose additively mod N.
PhononConfig translate(const PhononConfig& config, int shift);

// Momentum indices j with K = 2*pi*j/N, j in (-N/2, N/2], ascending.
std::vector<int> momentum_indices(int n_sites);

// The corresponding quasimomenta in (-pi, pi]; contains 0, and pi for even N.
std::vector<double> allowed_momenta(int n_sites);

// One momentum sector of the symmetry-adapted basis. There is exactly one
// sector state per phonon config (dim = D_ph); the representative product
// state keeps the excitation on site 0.
struct KSector {
  int j = 0;      // momentum index, K = 2*pi*j/n
  double K = 0.0;
  std::shared_ptr<const PhononBasis> basis;

  std::int64_t dim() const { return basis->size(); }
};

KSector make_sector(std::shared_ptr<const PhononBasis> basis, int j);

// c^dag_K |0>: the unit coordinate vector on the zero-phonon config.
Eigen::VectorXcd bloch_start_vector(const KSector& sector);

}  // namespace polaron
