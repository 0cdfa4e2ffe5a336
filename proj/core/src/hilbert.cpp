#include "polaron/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polaron/errors.hpp"

namespace polaron {

namespace {

// Exact binomial with overflow guard; capacity is the natural failure mode
// for basis sizes that cannot be addressed anyway.
std::int64_t binomial_checked(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) stays integral after /i at every step
    const std::int64_t num = n - k + i;
    if (result > (std::int64_t(1) << 62) / num)
      throw CapacityError("binomial overflows 64-bit arithmetic");
    result = result * num / i;
  }
  return result;
}

}  // namespace

PhononBasis::PhononBasis(int n_sites, int n_ph_max, std::int64_t max_dim)
    : n_sites_(n_sites), n_ph_max_(n_ph_max) {
  if (n_sites < 1) throw std::invalid_argument("PhononBasis: n_sites must be >= 1");
  if (n_ph_max < 0) throw std::invalid_argument("PhononBasis: n_ph_max must be >= 0");
  dim_ = dimension(n_sites, n_ph_max);
  if (dim_ > max_dim)
    throw CapacityError("PhononBasis: dimension " + std::to_string(dim_) +
                        " exceeds the configured budget " + std::to_string(max_dim));
  const int rows = n_ph_max + n_sites + 1;
  binom_cols_ = n_sites + 1;
  binom_.assign(static_cast<std::size_t>(rows) * binom_cols_, 0);
  for (int n = 0; n < rows; ++n)
    for (int k = 0; k <= std::min(n, n_sites); ++k)
      binom_[static_cast<std::size_t>(n) * binom_cols_ + k] = binomial_checked(n, k);
}

std::int64_t PhononBasis::dimension(int n_sites, int n_ph_max) {
  return binomial_checked(n_ph_max + n_sites, n_sites);
}

std::int64_t PhononBasis::binom(int n, int k) const {
  if (k < 0 || n < 0 || k > n) return 0;
  return binom_[static_cast<std::size_t>(n) * binom_cols_ + k];
}

std::int64_t PhononBasis::index_of(const PhononConfig& config) const {
  if (static_cast<int>(config.size()) != n_sites_)
    throw std::invalid_argument("PhononBasis::index_of: config has wrong length");
  int total = 0;
  for (int m : config) {
    if (m < 0) throw std::invalid_argument("PhononBasis::index_of: negative occupation");
    total += m;
  }
  if (total > n_ph_max_)
    throw std::invalid_argument("PhononBasis::index_of: total occupation above cutoff");

  // Grade offset: all configs with fewer phonons come first.
  std::int64_t rank = binom(total - 1 + n_sites_, n_sites_);
  // Within the grade, configs with a larger occupation at the first
  // differing site come first.
  int rem = total;
  for (int i = 0; i + 1 < n_sites_; ++i) {
    const int sites_after = n_sites_ - 1 - i;
    rank += binom(rem - config[i] - 1 + sites_after, sites_after);
    rem -= config[i];
  }
  return rank;
}

void PhononBasis::config(std::int64_t index, PhononConfig& out) const {
  if (index < 0 || index >= dim_)
    throw std::out_of_range("PhononBasis::config: index out of range");
  out.assign(n_sites_, 0);

  // Find the grade: largest s with offset(s) <= index.
  int total = 0;
  while (binom(total + n_sites_, n_sites_) <= index) ++total;
  std::int64_t r = index - binom(total - 1 + n_sites_, n_sites_);

  int rem = total;
  for (int i = 0; i + 1 < n_sites_; ++i) {
    const int sites_after = n_sites_ - 1 - i;
    // Occupations are scanned downward; configs with occupation exactly v
    // at this site number binom(rem - v + sites_after - 1, sites_after - 1).
    int v = rem;
    for (; v >= 0; --v) {
      const std::int64_t block = binom(rem - v + sites_after - 1, sites_after - 1);
      if (r < block) break;
      r -= block;
    }
    out[i] = v;
    rem -= v;
  }
  out[n_sites_ - 1] = rem;
}

PhononConfig PhononBasis::config(std::int64_t index) const {
  PhononConfig out;
  config(index, out);
  return out;
}

PhononConfig translate(const PhononConfig& config, int shift) {
  const int n = static_cast<int>(config.size());
  if (n == 0) return config;
  shift = ((shift % n) + n) % n;
  PhononConfig out(n);
  for (int i = 0; i < n; ++i) out[(i + shift) % n] = config[i];
  return out;
}

std::vector<int> momentum_indices(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("momentum_indices: n_sites must be >= 2");
  std::vector<int> js;
  js.reserve(n_sites);
  const int j_min = n_sites % 2 == 0 ? -(n_sites / 2 - 1) : -((n_sites - 1) / 2);
  const int j_max = n_sites / 2;
  for (int j = j_min; j <= j_max; ++j) js.push_back(j);
  return js;
}

std::vector<double> allowed_momenta(int n_sites) {
  std::vector<double> ks;
  for (int j : momentum_indices(n_sites))
    ks.push_back(2.0 * std::numbers::pi * j / n_sites);
  return ks;
}

KSector make_sector(std::shared_ptr<const PhononBasis> basis, int j) {
  if (!basis) throw std::invalid_argument("make_sector: null basis");
  const int n = basis->n_sites();
  const auto js = momentum_indices(n);
  if (j < js.front() || j > js.back())
    throw std::invalid_argument("make_sector: momentum index outside (-N/2, N/2]");
  return {j, 2.0 * std::numbers::pi * j / n, std::move(basis)};
}

Eigen::VectorXcd bloch_start_vector(const KSector& sector) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sector.dim());
  v[0] = 1.0;  // the zero-phonon config has rank 0 by construction
  return v;
}

}  // namespace polaron
