#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "polaron/errors.hpp"
#include "polaron/hamiltonian.hpp"

namespace polaron {

// Affine spectrum map. With a = (e_max - e_min)/(2(1-eps)) and
// b = (e_max + e_min)/2, the rescaled operator (H - b)/a has spectrum inside
// [-(1-eps), 1-eps]; frequencies map the same way.
struct RescaleInfo {
  double e_min = -1.0;
  double e_max = 1.0;
  double epsilon = 0.01;

  double scale() const { return (e_max - e_min) / (2.0 * (1.0 - epsilon)); }
  double shift() const { return 0.5 * (e_max + e_min); }
  double to_scaled(double e) const { return (e - shift()) / scale(); }
  double from_scaled(double x) const { return scale() * x + shift(); }
};

// (H - b)/a as an operator; works for any op with dim()/apply().
template <class Op>
struct ScaledOperator {
  const Op* op;
  double a;
  double b;

  Eigen::Index dim() const { return op->dim(); }
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    op->apply(in, out);
    out.noalias() -= b * in;
    out *= 1.0 / a;
  }
};

template <class Op>
ScaledOperator<Op> scaled(const Op& op, const RescaleInfo& rs) {
  return ScaledOperator<Op>{&op, rs.scale(), rs.shift()};
}

struct LanczosResult {
  double e_min;
  double e_max;
  int iterations;
};

// Extremal eigenvalue estimates by plain Lanczos (no reorthogonalization;
// ghost copies of converged Ritz values do not move the extrema). Stops when
// both edges change by less than tol between checks. Throws ConvergenceError
// carrying the best estimates if max_iter is exhausted.
template <class Op>
LanczosResult lanczos_extrema(const Op& op, double tol = 1e-10, int max_iter = 600,
                              std::uint64_t seed = 7) {
  const Eigen::Index n = op.dim();
  if (n == 1) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Unit(1, 0), he(1);
    op.apply(e, he);
    const double x = he[0].real();
    return {x, x, 1};
  }
  max_iter = static_cast<int>(std::min<Eigen::Index>(max_iter, n));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(n), v_prev = Eigen::VectorXcd::Zero(n), w(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = {gauss(rng), gauss(rng)};
  v.normalize();

  std::vector<double> alpha, beta;  // beta[j] couples step j to j+1
  double lo = 0.0, hi = 0.0, prev_lo = 0.0, prev_hi = 0.0;
  bool have_prev = false;

  auto ritz_edges = [&](double& rlo, double& rhi) {
    const int m = static_cast<int>(alpha.size());
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd e(std::max(m - 1, 0));
    for (int i = 0; i + 1 < m; ++i) e[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    rlo = es.eigenvalues()(0);
    rhi = es.eigenvalues()(m - 1);
  };

  for (int it = 0; it < max_iter; ++it) {
    op.apply(v, w);
    if (!beta.empty()) w.noalias() -= beta.back() * v_prev;
    const double a = v.dot(w).real();
    alpha.push_back(a);
    w.noalias() -= a * v;
    const double b = w.norm();

    const bool invariant = b < 1e-13 * std::max(1.0, std::abs(a));
    const bool check = invariant || (it + 1 == max_iter) || (it % 5 == 4);
    if (check) {
      ritz_edges(lo, hi);
      if (have_prev && std::abs(lo - prev_lo) < tol && std::abs(hi - prev_hi) < tol)
        return {lo, hi, it + 1};
      prev_lo = lo;
      prev_hi = hi;
      have_prev = true;
    }
    if (invariant) return {lo, hi, it + 1};  // exact invariant subspace

    beta.push_back(b);
    v_prev.swap(v);
    v = w / b;
  }
  throw ConvergenceError("lanczos_extrema: no convergence after max_iter iterations", lo, hi);
}

// Jackson attenuation factors g_0..g_{n_c-1}; g_0 = 1, strictly decreasing,
// g_{n_c-1} > 0.
std::vector<double> jackson_factors(int n_c);

struct MomentSet {
  int k_index = 0;
  double k = 0.0;
  std::vector<double> moments;
  long applications = 0;  // number of operator applications consumed
};

// Chebyshev moments mu_n = <start|T_n(H)|start> for a rescaled operator with
// spectrum inside (-1, 1), via the three-term recurrence and the doubling
// identities; ceil(n_c/2) operator applications for even n_c, three vectors
// of workspace. Throws std::runtime_error if the recursion diverges (which
// means the operator was not rescaled).
template <class Op>
MomentSet chebyshev_moments(const Op& op, const Eigen::VectorXcd& start, int n_c) {
  if (n_c < 1) throw std::invalid_argument("chebyshev_moments: n_c must be >= 1");
  if (start.size() != op.dim())
    throw std::invalid_argument("chebyshev_moments: start vector dimension mismatch");

  MomentSet out;
  out.moments.reserve(n_c);
  out.moments.push_back(start.squaredNorm());  // mu_0 = 1 for a normalized start
  if (n_c == 1) return out;

  constexpr double im_tol = 1e-10;
  auto real_checked = [&](std::complex<double> z) {
    if (!(std::abs(z.imag()) < im_tol))
      throw std::runtime_error("chebyshev_moments: moment has a non-real part beyond tolerance");
    return z.real();
  };

  Eigen::VectorXcd a_prev = start, a_cur(op.dim()), a_next(op.dim());
  op.apply(a_prev, a_cur);  // a_1 = H a_0
  out.applications = 1;
  const double mu0 = out.moments[0];
  const double mu1 = real_checked(a_cur.dot(a_prev));
  out.moments.push_back(mu1);

  int n = 1;
  while (static_cast<int>(out.moments.size()) < n_c) {
    out.moments.push_back(2.0 * a_cur.squaredNorm() - mu0);  // mu_{2n}
    if (static_cast<int>(out.moments.size()) == n_c) break;

    op.apply(a_cur, a_next);
    a_next = 2.0 * a_next - a_prev;  // a_{n+1} = 2 H a_n - a_{n-1}
    ++out.applications;
    out.moments.push_back(2.0 * real_checked(a_next.dot(a_cur)) - mu1);  // mu_{2n+1}

    a_prev.swap(a_cur);
    a_cur.swap(a_next);
    ++n;
    if ((n & 63) == 0) {
      const double nn = a_cur.squaredNorm();
      if (!std::isfinite(nn) || nn > 1e6)
        throw std::runtime_error(
            "chebyshev_moments: recursion diverged; spectrum is probably not inside (-1,1)");
    }
  }
  return out;
}

// A(k, omega) on the Chebyshev nodes, with node quadrature weights.
struct SpectralResult {
  int k_index = 0;
  double k = 0.0;
  Eigen::VectorXd omega;    // ascending, units of delta_omega
  Eigen::VectorXd values;   // A(k, omega_j), units of 1/(hbar*delta_omega)
  Eigen::VectorXd weights;  // Gauss-Chebyshev node masses; sum ~ 1
  RescaleInfo rescale;
  std::string kernel = "jackson";
  double sum_rule_defect = 0.0;  // |sum(weights) - 1|
};

// Damped-series evaluation at the Chebyshev nodes via a length-2*n_c complex
// FFT with phase twiddles, O(n_c log n_c); applies the 1/(pi sqrt(1-x^2))
// weight and unscales frequencies.
SpectralResult reconstruct(const MomentSet& moments, const std::vector<double>& factors,
                           const RescaleInfo& rescale);

struct KpmOptions {
  int n_moments = 10000;
  double epsilon = 0.01;
  double lanczos_tol = 1e-10;
  int lanczos_max_iter = 600;
  double bound_pad = 1e-3;    // relative pad on the Lanczos extrema
  bool global_bounds = false; // rescale with extrema taken over all K sectors
  std::uint64_t seed = 7;
};

// Padded rescale window from the Lanczos extrema of one operator. Lanczos
// slightly underestimates the spectral radius, hence the relative pad.
template <class Op>
RescaleInfo rescale_window(const Op& op, const KpmOptions& opts) {
  const auto ext = lanczos_extrema(op, opts.lanczos_tol, opts.lanczos_max_iter, opts.seed);
  const double span = std::max(ext.e_max - ext.e_min, 1e-12);
  return {ext.e_min - opts.bound_pad * span, ext.e_max + opts.bound_pad * span, opts.epsilon};
}

// Extrema taken over all K sectors, for a shared cross-k frequency grid.
RescaleInfo global_rescale_window(const ModelParams& model, const KpmOptions& opts);

// Full pipeline for one quasimomentum: sector build, Lanczos bounds, moment
// recursion, kernel damping, FFT reconstruction.
SpectralResult spectral_function(const ModelParams& model, int k_index,
                                 const KpmOptions& opts = {});
SpectralResult spectral_function(const SectorOperator& op, const KpmOptions& opts = {});

}  // namespace polaron
