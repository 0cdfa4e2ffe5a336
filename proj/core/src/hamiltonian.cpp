#include "polaron/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace polaron {

namespace {

int config_total(const PhononConfig& m) {
  int t = 0;
  for (int v : m) t += v;
  return t;
}

}  // namespace

std::shared_ptr<const SectorTerms> build_sector_terms(const PhononBasis& basis) {
  const auto dim = basis.size();
  const int n = basis.n_sites();
  const int nmax = basis.n_ph_max();
  auto terms = std::make_shared<SectorTerms>();
  terms->diag.resize(dim);
  terms->rot_left.resize(dim);
  terms->rot_right.resize(dim);
  terms->peierls_right.reserve(4 * dim);
  terms->peierls_left.reserve(4 * dim);
  if (n > 2) terms->breathing.reserve(4 * dim);

  PhononConfig m;
  const auto i32 = [](std::int64_t v) { return static_cast<std::int32_t>(v); };

  // Ladder entries for x_site acting on m, then a cyclic shift; `sign` folds
  // in the relative sign of the displacement difference.
  auto push_ladder = [&](std::vector<SectorTerms::Entry>& list, std::int64_t src, int site,
                         double sign, int shift, const PhononConfig& cfg, int total) {
    PhononConfig tmp = cfg;
    if (total < nmax) {
      tmp[site] += 1;
      list.push_back({i32(src), i32(basis.index_of(translate(tmp, shift))),
                      sign * std::sqrt(cfg[site] + 1.0)});
      tmp[site] -= 1;
    }
    if (cfg[site] > 0) {
      tmp[site] -= 1;
      list.push_back({i32(src), i32(basis.index_of(translate(tmp, shift))),
                      sign * std::sqrt(static_cast<double>(cfg[site]))});
      tmp[site] += 1;
    }
  };

  const int last = n - 1;
  for (std::int64_t i = 0; i < dim; ++i) {
    basis.config(i, m);
    const int total = config_total(m);
    terms->diag[i] = static_cast<double>(total);
    terms->rot_left[i] = i32(basis.index_of(translate(m, -1)));
    terms->rot_right[i] = i32(basis.index_of(translate(m, +1)));

    // Excitation hop 0 -> 1 carries (x_1 - x_0), then rotate back left.
    push_ladder(terms->peierls_right, i, 1, +1.0, -1, m, total);
    push_ladder(terms->peierls_right, i, 0, -1.0, -1, m, total);
    // Hop 0 -> N-1 carries (x_0 - x_{N-1}), then rotate back right.
    push_ladder(terms->peierls_left, i, 0, +1.0, +1, m, total);
    push_ladder(terms->peierls_left, i, last, -1.0, +1, m, total);
    // On-site breathing displacement difference x_1 - x_{N-1}; identically
    // zero for N = 2 where the two neighbor sites coincide.
    if (n > 2) {
      push_ladder(terms->breathing, i, 1, +1.0, 0, m, total);
      push_ladder(terms->breathing, i, last, -1.0, 0, m, total);
    }
  }
  return terms;
}

SectorOperator::SectorOperator(KSector sector, ModelParams model)
    : SectorOperator(sector, model, nullptr) {
  terms_ = build_sector_terms(*sector_.basis);
}

SectorOperator::SectorOperator(KSector sector, ModelParams model,
                               std::shared_ptr<const SectorTerms> terms)
    : sector_(std::move(sector)), model_(model), terms_(std::move(terms)) {
  model_.validate();
  if (model_.boundary != Boundary::periodic)
    throw std::invalid_argument("SectorOperator: momentum sectors require periodic boundary");
  if (model_.n_sites != sector_.basis->n_sites())
    throw std::invalid_argument("SectorOperator: model/basis site count mismatch");
  if (model_.n_ph_max != sector_.basis->n_ph_max())
    throw std::invalid_argument("SectorOperator: model/basis cutoff mismatch");
}

void SectorOperator::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  const Eigen::Index n = dim();
  if (in.size() != n) throw std::invalid_argument("SectorOperator::apply: dimension mismatch");
  out.resize(n);

  const std::complex<double> phase(std::cos(sector_.K), std::sin(sector_.K));
  const std::complex<double> hop_r = -model_.t0 * phase;
  const std::complex<double> hop_l = std::conj(hop_r);
  const std::complex<double> pei_r = model_.g * phase;
  const std::complex<double> pei_l = std::conj(pei_r);
  const double breathe = -model_.g;

  const auto& t = *terms_;
  for (Eigen::Index i = 0; i < n; ++i) out[i] = t.diag[i] * in[i];
  for (Eigen::Index i = 0; i < n; ++i) out[t.rot_left[i]] += hop_r * in[i];
  for (Eigen::Index i = 0; i < n; ++i) out[t.rot_right[i]] += hop_l * in[i];
  if (model_.g != 0.0) {
    for (const auto& e : t.peierls_right) out[e.dst] += pei_r * e.w * in[e.src];
    for (const auto& e : t.peierls_left) out[e.dst] += pei_l * e.w * in[e.src];
    for (const auto& e : t.breathing) out[e.dst] += breathe * e.w * in[e.src];
  }
}

Eigen::VectorXcd SectorOperator::apply(const Eigen::VectorXcd& in) const {
  Eigen::VectorXcd out;
  apply(in, out);
  return out;
}

RealSpaceOperator::RealSpaceOperator(std::shared_ptr<const PhononBasis> basis,
                                     ModelParams model)
    : basis_(std::move(basis)), model_(model) {
  model_.validate();
  if (!basis_) throw std::invalid_argument("RealSpaceOperator: null basis");
  if (model_.n_sites != basis_->n_sites() || model_.n_ph_max != basis_->n_ph_max())
    throw std::invalid_argument("RealSpaceOperator: model/basis mismatch");
}

Eigen::Index RealSpaceOperator::dim() const {
  return static_cast<Eigen::Index>((model_.n_sites + 1) * basis_->size());
}

Eigen::Index RealSpaceOperator::site_offset(int site) const {
  return static_cast<Eigen::Index>((1 + site) * basis_->size());
}

void RealSpaceOperator::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  if (in.size() != dim())
    throw std::invalid_argument("RealSpaceOperator::apply: dimension mismatch");
  out.setZero(dim());

  const std::int64_t d = basis_->size();
  const int n = model_.n_sites;
  const int nmax = model_.n_ph_max;
  const bool periodic = model_.boundary == Boundary::periodic;

  PhononConfig m;
  // Ladder scatter of coeff * x_site |block_src> into another site block.
  auto ladder = [&](double coeff, int site, const PhononConfig& cfg, int total,
                    std::int64_t dst_block, std::complex<double> amp) {
    if (coeff == 0.0) return;
    PhononConfig tmp = cfg;
    if (total < nmax) {
      tmp[site] += 1;
      out[dst_block * d + basis_->index_of(tmp)] += coeff * std::sqrt(cfg[site] + 1.0) * amp;
      tmp[site] -= 1;
    }
    if (cfg[site] > 0) {
      tmp[site] -= 1;
      out[dst_block * d + basis_->index_of(tmp)] +=
          coeff * std::sqrt(static_cast<double>(cfg[site])) * amp;
      tmp[site] += 1;
    }
  };

  for (std::int64_t c = 0; c < d; ++c) {
    basis_->config(c, m);
    const int total = config_total(m);

    // Vacuum block: free phonons only.
    out[c] += static_cast<double>(total) * in[c];

    for (int site = 0; site < n; ++site) {
      const std::complex<double> amp = in[(1 + site) * d + c];
      if (amp == std::complex<double>(0.0, 0.0)) continue;
      const std::int64_t blk = 1 + site;

      out[blk * d + c] += static_cast<double>(total) * amp;

      const bool has_right = periodic || site + 1 < n;
      const bool has_left = periodic || site > 0;
      const int right = (site + 1) % n;
      const int left = (site + n - 1) % n;

      if (has_right) {
        out[(1 + right) * d + c] += -model_.t0 * amp;
        // Peierls on the bond (site, site+1): hop modulated by x_{site+1} - x_site.
        ladder(+model_.g, right, m, total, 1 + right, amp);
        ladder(-model_.g, site, m, total, 1 + right, amp);
      }
      if (has_left) {
        out[(1 + left) * d + c] += -model_.t0 * amp;
        // Peierls on the bond (site-1, site): factor x_site - x_{site-1}.
        ladder(+model_.g, site, m, total, 1 + left, amp);
        ladder(-model_.g, left, m, total, 1 + left, amp);
      }
      // Breathing: -g (x_{site+1} - x_{site-1}); absent neighbors enter as
      // zero, and for the periodic two-site chain the difference vanishes.
      if (!(has_right && has_left && right == left)) {
        if (has_right) ladder(-model_.g, right, m, total, blk, amp);
        if (has_left) ladder(+model_.g, left, m, total, blk, amp);
      }
    }
  }
}

Eigen::VectorXcd RealSpaceOperator::apply(const Eigen::VectorXcd& in) const {
  Eigen::VectorXcd out;
  apply(in, out);
  return out;
}

}  // namespace polaron
