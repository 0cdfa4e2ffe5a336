#include "polaron/ramsey.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polaron/errors.hpp"

namespace polaron {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

double RamseyState::norm() const { return std::sqrt(zero_one.squaredNorm() + pairs.squaredNorm()); }

int RamseyState::pair_index(int a, int b, int n_sites) {
  if (a > b) std::swap(a, b);
  if (a < 0 || b >= n_sites || a == b)
    throw std::invalid_argument("RamseyState::pair_index: bad site pair");
  return a * n_sites - a * (a + 1) / 2 + (b - a - 1);
}

RamseyState ramsey_ground_state(std::shared_ptr<const PhononBasis> basis, int n_sites) {
  if (!basis || basis->n_sites() != n_sites)
    throw std::invalid_argument("ramsey_ground_state: basis/site mismatch");
  RamseyState s;
  s.n_sites = n_sites;
  const auto d = basis->size();
  s.basis = std::move(basis);
  s.zero_one = Eigen::VectorXcd::Zero((1 + n_sites) * d);
  s.pairs = Eigen::VectorXcd::Zero(n_sites * (n_sites - 1) / 2 * d);
  s.zero_one[0] = 1.0;  // vacuum x zero phonons
  return s;
}

void rabi_pulse(RamseyState& state, int site, double phi) {
  const int n = state.n_sites;
  if (site < 0 || site >= n) throw std::invalid_argument("rabi_pulse: site out of range");
  const auto d = state.basis->size();
  const std::complex<double> up = kI * std::exp(kI * phi) * kInvSqrt2;    // i e^{+i phi} s^+
  const std::complex<double> down = kI * std::exp(-kI * phi) * kInvSqrt2;  // i e^{-i phi} s^-

  Eigen::VectorXcd zo = state.zero_one * kInvSqrt2;
  Eigen::VectorXcd pr = state.pairs * kInvSqrt2;

  const auto vac = state.zero_one.segment(0, d);
  const auto one = [&](int m) { return state.zero_one.segment((1 + m) * d, d); };

  zo.segment((1 + site) * d, d) += up * vac;    // vacuum -> excitation at `site`
  zo.segment(0, d) += down * one(site);         // excitation at `site` -> vacuum
  for (int m = 0; m < n; ++m) {
    if (m == site) continue;
    const int p = RamseyState::pair_index(m, site, n);
    pr.segment(p * d, d) += up * one(m);        // second excitation on top of site m
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const auto block = state.pairs.segment(RamseyState::pair_index(a, b, n) * d, d);
      if (block.squaredNorm() == 0.0) continue;
      if (a != site && b != site)
        throw std::domain_error(
            "rabi_pulse: pulse on a pair component at a third site would leave the "
            "two-excitation support");
      zo.segment((1 + (a == site ? b : a)) * d, d) += down * block;
    }

  state.zero_one.swap(zo);
  state.pairs.swap(pr);
}

double measure_sz(const RamseyState& state, int site) {
  const int n = state.n_sites;
  if (site < 0 || site >= n) throw std::invalid_argument("measure_sz: site out of range");
  const auto d = state.basis->size();
  double m = -state.zero_one.segment(0, d).squaredNorm();  // vacuum: qubit down
  for (int s = 0; s < n; ++s)
    m += (s == site ? 1.0 : -1.0) * state.zero_one.segment((1 + s) * d, d).squaredNorm();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double w =
          state.pairs.segment(RamseyState::pair_index(a, b, n) * d, d).squaredNorm();
      m += (a == site || b == site ? 1.0 : -1.0) * w;
    }
  return m;
}

namespace {

void check_times(const Eigen::VectorXd& times) {
  for (Eigen::Index i = 0; i < times.size(); ++i)
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1]))
      throw std::invalid_argument("ramsey: times must be non-decreasing and >= 0");
}

void check_budget(const ModelParams& model, std::int64_t budget) {
  const auto d = PhononBasis::dimension(model.n_sites, model.n_ph_max);
  const auto amplitudes =
      d * (1 + model.n_sites + model.n_sites * (model.n_sites - 1) / 2);
  if (amplitudes > budget)
    throw CapacityError("ramsey: state of " + std::to_string(amplitudes) +
                        " amplitudes exceeds the dimension budget");
}

}  // namespace

RamseyRecord protocol_run(const ModelParams& model, int n, int n_prime, double phi1,
                          double phi2, const Eigen::VectorXd& times,
                          const RamseyOptions& opts) {
  model.validate();
  check_times(times);
  check_budget(model, opts.dim_budget);

  auto basis = std::make_shared<const PhononBasis>(model.n_sites, model.n_ph_max);
  const RealSpaceOperator h(basis, model);
  const RescaleInfo window = rescale_window(h, opts.kpm);

  RamseyRecord rec;
  rec.n = n;
  rec.n_prime = n_prime;
  rec.phi1 = phi1;
  rec.phi2 = phi2;
  rec.times = times;
  rec.m_values.resize(times.size());

  RamseyState state = ramsey_ground_state(basis, model.n_sites);
  rabi_pulse(state, n, phi1);
  double t_prev = 0.0;
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    chebyshev_propagate(h, window, state.zero_one, times[i] - t_prev, opts.propagate);
    t_prev = times[i];
    RamseyState probed = state;
    rabi_pulse(probed, n_prime, phi2);
    rec.m_values[i] = measure_sz(probed, n_prime);
  }
  return rec;
}

std::vector<RamseyRecord> protocol_run_all_pairs(const ModelParams& model, double phi1,
                                                 double phi2, const Eigen::VectorXd& times,
                                                 const RamseyOptions& opts) {
  model.validate();
  check_times(times);
  check_budget(model, opts.dim_budget);

  auto basis = std::make_shared<const PhononBasis>(model.n_sites, model.n_ph_max);
  const RealSpaceOperator h(basis, model);
  const RescaleInfo window = rescale_window(h, opts.kpm);

  std::vector<RamseyRecord> records;
  records.reserve(model.n_sites * model.n_sites);
  for (int n = 0; n < model.n_sites; ++n) {
    RamseyState state = ramsey_ground_state(basis, model.n_sites);
    rabi_pulse(state, n, phi1);
    std::vector<RamseyRecord> row(model.n_sites);
    for (int np = 0; np < model.n_sites; ++np) {
      row[np].n = n;
      row[np].n_prime = np;
      row[np].phi1 = phi1;
      row[np].phi2 = phi2;
      row[np].times = times;
      row[np].m_values.resize(times.size());
    }
    double t_prev = 0.0;
    for (Eigen::Index i = 0; i < times.size(); ++i) {
      chebyshev_propagate(h, window, state.zero_one, times[i] - t_prev, opts.propagate);
      t_prev = times[i];
      for (int np = 0; np < model.n_sites; ++np) {
        RamseyState probed = state;
        rabi_pulse(probed, np, phi2);
        row[np].m_values[i] = measure_sz(probed, np);
      }
    }
    for (auto& r : row) records.push_back(std::move(r));
  }
  return records;
}

GreensFunctions reconstruct_greens(const std::vector<RamseyRecord>& quadrature_setting,
                                   const std::vector<RamseyRecord>& inphase_setting,
                                   int n_sites) {
  const std::size_t n_pairs = static_cast<std::size_t>(n_sites) * n_sites;
  if (quadrature_setting.size() != n_pairs || inphase_setting.size() != n_pairs)
    throw std::invalid_argument("reconstruct_greens: need records for all N^2 site pairs");

  const Eigen::VectorXd& times = quadrature_setting.front().times;
  if (times.size() == 0 || times[0] != 0.0)
    throw std::invalid_argument(
        "reconstruct_greens: the time grid must start at t = 0 to fix the normalization");

  auto locate = [&](const std::vector<RamseyRecord>& set, int n, int np) -> const RamseyRecord& {
    for (const auto& r : set)
      if (r.n == n && r.n_prime == np) {
        if (r.times.size() != times.size() || (r.times - times).cwiseAbs().maxCoeff() > 0.0)
          throw std::invalid_argument("reconstruct_greens: inconsistent time grids");
        return r;
      }
    throw std::invalid_argument("reconstruct_greens: missing site pair record");
  };

  const double dq = quadrature_setting.front().phi1 - quadrature_setting.front().phi2;
  const double di = inphase_setting.front().phi1 - inphase_setting.front().phi2;
  const double sin_dq = std::sin(dq), cos_di = std::cos(di);
  if (std::abs(std::abs(sin_dq) - 1.0) > 1e-9)
    throw std::invalid_argument("reconstruct_greens: first setting must have phi1-phi2 = +-pi/2");
  if (std::abs(std::abs(cos_di) - 1.0) > 1e-9)
    throw std::invalid_argument("reconstruct_greens: second setting must have phi1 = phi2 mod pi");

  GreensFunctions out;
  out.times = times;
  out.k_indices = momentum_indices(n_sites);
  for (int j : out.k_indices)
    out.momenta.push_back(2.0 * std::numbers::pi * j / n_sites);
  const int n_k = static_cast<int>(out.k_indices.size());
  const Eigen::Index n_t = times.size();

  out.real_space.assign(n_t, Eigen::MatrixXcd::Zero(n_sites, n_sites));
  for (int n = 0; n < n_sites; ++n)
    for (int np = 0; np < n_sites; ++np) {
      const auto& rq = locate(quadrature_setting, n, np);
      const auto& ri = locate(inphase_setting, n, np);
      for (Eigen::Index i = 0; i < n_t; ++i) {
        const double s1 = -4.0 * rq.m_values[i] / sin_dq;  // Gxx + Gyy
        const double s2 = +4.0 * ri.m_values[i] / cos_di;  // Gxy - Gyx
        out.real_space[i](n, np) = s1 - kI * s2;
      }
    }

  out.g_minus.resize(n_k, n_t);
  for (int ki = 0; ki < n_k; ++ki) {
    const double k = out.momenta[ki];
    for (Eigen::Index i = 0; i < n_t; ++i) {
      std::complex<double> acc = 0.0;
      for (int n = 0; n < n_sites; ++n)
        for (int np = 0; np < n_sites; ++np)
          acc += std::exp(kI * (k * (n - np))) * out.real_space[i](n, np);
      out.g_minus(ki, i) = acc / static_cast<double>(n_sites);
    }
  }
  out.g_plus = -out.g_minus;

  // Fix the overall constant (the paper's sigma^+- normalization) by the
  // equal-time anticommutator value G_+(k, 0) = -i, averaged over k.
  std::complex<double> equal_time = 0.0;
  for (int ki = 0; ki < n_k; ++ki) equal_time += out.g_plus(ki, 0);
  equal_time /= static_cast<double>(n_k);
  if (std::abs(equal_time) < 1e-12)
    throw std::runtime_error("reconstruct_greens: vanishing equal-time response");
  const std::complex<double> c = -kI / equal_time;
  if (std::abs(c.imag()) > 1e-6 * std::abs(c))
    throw std::runtime_error("reconstruct_greens: normalization constant is not real");
  out.normalization = c.real();

  out.g_plus *= c;
  out.g_minus *= c;
  for (auto& m : out.real_space) m *= c;
  return out;
}

RamseySpectral spectral_from_ramsey(const GreensFunctions& greens, double eta,
                                    const Eigen::VectorXd& omega_grid) {
  if (!(eta > 0.0)) throw std::domain_error("spectral_from_ramsey: eta must be positive");
  const Eigen::Index n_t = greens.times.size();
  if (n_t < 2) throw std::invalid_argument("spectral_from_ramsey: need at least two times");

  RamseySpectral out;
  out.k_indices = greens.k_indices;
  out.momenta = greens.momenta;
  out.omega = omega_grid;
  out.values.resize(static_cast<Eigen::Index>(greens.k_indices.size()), omega_grid.size());
  out.horizon_warning = std::exp(-eta * greens.times[n_t - 1]) > 1e-6;

  for (std::size_t ki = 0; ki < greens.k_indices.size(); ++ki) {
    for (Eigen::Index w = 0; w < omega_grid.size(); ++w) {
      std::complex<double> integral = 0.0;
      for (Eigen::Index i = 0; i + 1 < n_t; ++i) {
        const double t0 = greens.times[i], t1 = greens.times[i + 1];
        const auto f0 = greens.g_plus(ki, i) *
                        std::exp(std::complex<double>(-eta * t0, omega_grid[w] * t0));
        const auto f1 = greens.g_plus(ki, i + 1) *
                        std::exp(std::complex<double>(-eta * t1, omega_grid[w] * t1));
        integral += 0.5 * (t1 - t0) * (f0 + f1);
      }
      out.values(ki, w) = -integral.imag() / std::numbers::pi;
    }
  }
  return out;
}

}  // namespace polaron
