#include "polaron/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "polaron/errors.hpp"

namespace polaron {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

int config_total(const PhononConfig& m) {
  int t = 0;
  for (int v : m) t += v;
  return t;
}

void check_k_index(int n_sites, int k_index) {
  const auto js = momentum_indices(n_sites);
  if (k_index < js.front() || k_index > js.back())
    throw std::invalid_argument("oracle: momentum index outside (-N/2, N/2]");
}

// Literal real-space walk over the hopping, phonon, Peierls and breathing
// terms with explicit amplitudes t0 and g; column-by-column dense fill.
Eigen::MatrixXd assemble_real_space(const PhononBasis& basis, Boundary boundary, double t0,
                                    double g) {
  const std::int64_t d = basis.size();
  const int n = basis.n_sites();
  const int nmax = basis.n_ph_max();
  const bool periodic = boundary == Boundary::periodic;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n * d, n * d);

  PhononConfig m;
  auto ladder_into = [&](double coeff, int site, const PhononConfig& cfg, int total,
                         std::int64_t row_block, std::int64_t col) {
    if (coeff == 0.0) return;
    PhononConfig tmp = cfg;
    if (total < nmax) {
      tmp[site] += 1;
      h(row_block * d + basis.index_of(tmp), col) += coeff * std::sqrt(cfg[site] + 1.0);
      tmp[site] -= 1;
    }
    if (cfg[site] > 0) {
      tmp[site] -= 1;
      h(row_block * d + basis.index_of(tmp), col) +=
          coeff * std::sqrt(static_cast<double>(cfg[site]));
      tmp[site] += 1;
    }
  };

  for (std::int64_t c = 0; c < d; ++c) {
    basis.config(c, m);
    const int total = config_total(m);
    for (int site = 0; site < n; ++site) {
      const std::int64_t col = site * d + c;
      h(col, col) += static_cast<double>(total);

      const bool has_right = periodic || site + 1 < n;
      const bool has_left = periodic || site > 0;
      const int right = (site + 1) % n;
      const int left = (site + n - 1) % n;

      if (has_right) {
        h(right * d + c, col) += -t0;
        ladder_into(+g, right, m, total, right, col);
        ladder_into(-g, site, m, total, right, col);
      }
      if (has_left) {
        h(left * d + c, col) += -t0;
        ladder_into(+g, site, m, total, left, col);
        ladder_into(-g, left, m, total, left, col);
      }
      if (has_right) ladder_into(-g, right, m, total, site, col);
      if (has_left) ladder_into(+g, left, m, total, site, col);
    }
  }
  return h;
}

// <K,m'|H|K,m> by sandwiching between explicit symmetry-adapted vectors
// |K,m> = N^{-1/2} sum_r e^{-iKr} |site r> x |translate(m, r)>.
Eigen::MatrixXcd sandwich_sector(const Eigen::MatrixXd& h1, const PhononBasis& basis,
                                 int k_index) {
  const std::int64_t d = basis.size();
  const int n = basis.n_sites();
  const double K = 2.0 * std::numbers::pi * k_index / n;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

  std::vector<std::complex<double>> phase(n);
  for (int r = 0; r < n; ++r) phase[r] = std::exp(-kI * (K * r)) * inv_sqrt_n;

  // Row indices of the nonzeros of |K,m> for every m.
  Eigen::MatrixX<std::int64_t> support(n, d);
  PhononConfig m;
  for (std::int64_t c = 0; c < d; ++c) {
    basis.config(c, m);
    for (int r = 0; r < n; ++r)
      support(r, c) = static_cast<std::int64_t>(r) * d + basis.index_of(translate(m, r));
  }

  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n * d, d);  // w.col(m) = H |K,m>
  for (std::int64_t c = 0; c < d; ++c)
    for (int r = 0; r < n; ++r)
      w.col(c) += phase[r] * h1.col(support(r, c)).cast<std::complex<double>>();

  Eigen::MatrixXcd hk(d, d);
  for (std::int64_t row = 0; row < d; ++row)
    for (std::int64_t c = 0; c < d; ++c) {
      std::complex<double> acc = 0.0;
      for (int r = 0; r < n; ++r) acc += std::conj(phase[r]) * w(support(r, row), c);
      hk(row, c) = acc;
    }
  return hk;
}

}  // namespace

Eigen::MatrixXd build_real_space_matrix(const ModelParams& model, const PhononBasis& basis) {
  model.validate();
  if (model.n_sites != basis.n_sites() || model.n_ph_max != basis.n_ph_max())
    throw std::invalid_argument("build_real_space_matrix: model/basis mismatch");
  return assemble_real_space(basis, model.boundary, model.t0, model.g);
}

Eigen::MatrixXcd build_sector_matrix(const ModelParams& model, const PhononBasis& basis,
                                     int k_index) {
  model.validate();
  if (model.boundary != Boundary::periodic)
    throw std::invalid_argument("build_sector_matrix: momentum sectors require periodic boundary");
  check_k_index(model.n_sites, k_index);
  return sandwich_sector(build_real_space_matrix(model, basis), basis, k_index);
}

SectorSpectrum diagonalize_sector(const ModelParams& model, int k_index,
                                  const OracleOptions& opts) {
  model.validate();
  check_k_index(model.n_sites, k_index);
  const auto dim = PhononBasis::dimension(model.n_sites, model.n_ph_max);
  if (dim > opts.dense_budget)
    throw CapacityError("diagonalize_sector: sector dimension " + std::to_string(dim) +
                        " exceeds the dense budget " + std::to_string(opts.dense_budget));
  const PhononBasis basis(model.n_sites, model.n_ph_max);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      build_sector_matrix(model, basis, k_index));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("diagonalize_sector: eigensolver failed");

  SectorSpectrum out;
  out.k_index = k_index;
  out.K = 2.0 * std::numbers::pi * k_index / model.n_sites;
  out.energies = es.eigenvalues();
  out.weights.resize(dim);
  for (std::int64_t j = 0; j < dim; ++j)
    out.weights[j] = std::norm(es.eigenvectors()(0, j));  // overlap with c^dag_K|0>
  return out;
}

Eigen::VectorXd lehmann_spectral(const SectorSpectrum& spectrum, double eta,
                                 const Eigen::VectorXd& omega) {
  if (!(eta > 0.0)) throw std::domain_error("lehmann_spectral: eta must be positive");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(omega.size());
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < spectrum.energies.size(); ++j) {
      const double de = omega[i] - spectrum.energies[j];
      sum += spectrum.weights[j] * (eta / std::numbers::pi) / (de * de + eta * eta);
    }
    a[i] = sum;
  }
  return a;
}

std::vector<ScanPoint> ground_state_scan(const ModelParams& base,
                                         std::span<const double> lambdas,
                                         const OracleOptions& opts) {
  base.validate();
  if (!(base.g > 0.0))
    throw std::domain_error("ground_state_scan: base coupling g must be positive");
  if (base.boundary != Boundary::periodic)
    throw std::invalid_argument("ground_state_scan: periodic boundary required");
  const auto dim = PhononBasis::dimension(base.n_sites, base.n_ph_max);
  if (dim > opts.dense_budget)
    throw CapacityError("ground_state_scan: sector dimension exceeds the dense budget");

  const PhononBasis basis(base.n_sites, base.n_ph_max);
  // H(t0) is linear in t0; sandwich the hopping part and the rest once per
  // sector, then recombine for every lambda on the grid.
  const Eigen::MatrixXd rest = assemble_real_space(basis, base.boundary, 0.0, base.g);
  const Eigen::MatrixXd hop =
      assemble_real_space(basis, base.boundary, 1.0, base.g) - rest;

  std::vector<int> js;
  for (int j : momentum_indices(base.n_sites))
    if (j >= 0) js.push_back(j);

  std::vector<Eigen::MatrixXcd> s_hop, s_rest;
  for (int j : js) {
    s_hop.push_back(sandwich_sector(hop, basis, j));
    s_rest.push_back(sandwich_sector(rest, basis, j));
  }

  std::vector<ScanPoint> out;
  for (double lambda : lambdas) {
    if (!(lambda > 0.0))
      throw std::domain_error("ground_state_scan: lambda values must be positive");
    ScanPoint p;
    p.lambda_eff = lambda;
    p.t0 = 3.0 * base.g * base.g / lambda;

    double best = 0.0, best_nonzero = 0.0;
    int best_j = 0;
    for (std::size_t idx = 0; idx < js.size(); ++idx) {
      Eigen::MatrixXcd hk = p.t0 * s_hop[idx] + s_rest[idx];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hk, Eigen::EigenvaluesOnly);
      const double e0 = es.eigenvalues()(0);
      if (js[idx] == 0) {
        p.e0_k0 = e0;
        best = e0;
        best_j = 0;
      } else {
        if (idx == 1 || e0 < best_nonzero) best_nonzero = e0;
        if (e0 < best) {  // strict: ties resolve toward smaller |K|
          best = e0;
          best_j = js[idx];
        }
      }
    }
    p.e0_best_nonzero = best_nonzero;
    p.gap = best_nonzero - p.e0_k0;
    p.k_gs_index = best_j;
    p.K_gs = 2.0 * std::numbers::pi * best_j / base.n_sites;
    p.degenerate_pair = best_j != 0 && 2 * best_j != base.n_sites;
    out.push_back(p);
  }
  return out;
}

std::vector<std::complex<double>> direct_greens(const ModelParams& model, int k_index,
                                                const Eigen::VectorXd& times,
                                                const OracleOptions& opts) {
  model.validate();
  check_k_index(model.n_sites, k_index);
  const double k = 2.0 * std::numbers::pi * k_index / model.n_sites;

  Eigen::VectorXd energies;
  Eigen::VectorXd weights;
  if (model.boundary == Boundary::periodic) {
    const auto spectrum = diagonalize_sector(model, k_index, opts);
    energies = spectrum.energies;
    weights = spectrum.weights;
  } else {
    const auto d = PhononBasis::dimension(model.n_sites, model.n_ph_max);
    const auto full = d * model.n_sites;
    if (full > opts.dense_budget)
      throw CapacityError("direct_greens: real-space dimension exceeds the dense budget");
    const PhononBasis basis(model.n_sites, model.n_ph_max);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_real_space_matrix(model, basis));
    if (es.info() != Eigen::Success)
      throw std::runtime_error("direct_greens: eigensolver failed");
    energies = es.eigenvalues();
    weights.resize(full);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(model.n_sites));
    for (Eigen::Index j = 0; j < full; ++j) {
      std::complex<double> overlap = 0.0;  // <psi_j | c^dag_k |0>, eigenvectors real
      for (int site = 0; site < model.n_sites; ++site)
        overlap += es.eigenvectors()(site * d, j) * std::exp(kI * (k * site)) * inv_sqrt_n;
      weights[j] = std::norm(overlap);
    }
  }

  std::vector<std::complex<double>> g(times.size());
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) {
      g[i] = 0.0;  // retarded
      continue;
    }
    std::complex<double> sum = 0.0;
    for (Eigen::Index j = 0; j < energies.size(); ++j)
      sum += weights[j] * std::exp(-kI * (energies[j] * times[i]));
    g[i] = -kI * sum;
  }
  return g;
}

}  // namespace polaron
