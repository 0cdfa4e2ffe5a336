#include "polaron/kpm.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace polaron {

namespace {

constexpr double kPi = std::numbers::pi;

// fftw plan creation is not thread-safe; execution on distinct plans is.
std::mutex fftw_mutex;

// F_j = sum_n b_n exp(+2*pi*i*n*j/len), unnormalized.
std::vector<std::complex<double>> fft_backward(const std::vector<std::complex<double>>& b) {
  const int len = static_cast<int>(b.size());
  std::vector<std::complex<double>> out(len);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    plan = fftw_plan_dft_1d(
        len, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(b.data())),
        reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

std::vector<double> jackson_factors(int n_c) {
  if (n_c < 1) throw std::invalid_argument("jackson_factors: n_c must be >= 1");
  std::vector<double> g(n_c);
  const double q = kPi / (n_c + 1.0);
  const double cot_q = std::cos(q) / std::sin(q);
  for (int n = 0; n < n_c; ++n)
    g[n] = ((n_c - n + 1.0) * std::cos(n * q) + std::sin(n * q) * cot_q) / (n_c + 1.0);
  return g;
}

SpectralResult reconstruct(const MomentSet& moments, const std::vector<double>& factors,
                           const RescaleInfo& rescale) {
  const int n_c = static_cast<int>(moments.moments.size());
  if (static_cast<int>(factors.size()) != n_c)
    throw std::invalid_argument("reconstruct: factor list length must equal moment count");

  // Damped series at the Chebyshev nodes x_j = cos(pi (j+1/2)/n_c):
  //   s_j = gamma_0 + 2 sum_{n>=1} gamma_n cos(pi n (j+1/2)/n_c),
  // realized as the real part of a length-2*n_c backward FFT of
  // b_n = (2 - delta_n0) gamma_n exp(i pi n/(2 n_c)).
  std::vector<std::complex<double>> b(2 * n_c, 0.0);
  for (int n = 0; n < n_c; ++n) {
    const double gamma = moments.moments[n] * factors[n];
    const double twiddle = kPi * n / (2.0 * n_c);
    b[n] = (n == 0 ? 1.0 : 2.0) * gamma *
           std::complex<double>(std::cos(twiddle), std::sin(twiddle));
  }
  const auto f = fft_backward(b);

  SpectralResult out;
  out.k_index = moments.k_index;
  out.k = moments.k;
  out.rescale = rescale;
  out.omega.resize(n_c);
  out.values.resize(n_c);
  out.weights.resize(n_c);

  const double a = rescale.scale();
  double mass = 0.0;
  for (int j = 0; j < n_c; ++j) {
    const double theta = kPi * (j + 0.5) / n_c;
    const double series = f[j].real();
    const double fk = series / (kPi * std::sin(theta));
    const int rev = n_c - 1 - j;  // nodes descend in j; emit ascending omega
    out.omega[rev] = rescale.from_scaled(std::cos(theta));
    out.values[rev] = fk / a;
    out.weights[rev] = (kPi / n_c) * std::sin(theta) * fk;
    mass += out.weights[rev];
  }
  out.sum_rule_defect = std::abs(mass - 1.0);
  return out;
}

RescaleInfo global_rescale_window(const ModelParams& model, const KpmOptions& opts) {
  auto basis = std::make_shared<const PhononBasis>(model.n_sites, model.n_ph_max);
  const auto terms = build_sector_terms(*basis);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (int j : momentum_indices(model.n_sites)) {
    if (j < 0) continue;  // sectors at -K are complex conjugates of +K
    const SectorOperator op(make_sector(basis, j), model, terms);
    const auto ext = lanczos_extrema(op, opts.lanczos_tol, opts.lanczos_max_iter, opts.seed);
    lo = first ? ext.e_min : std::min(lo, ext.e_min);
    hi = first ? ext.e_max : std::max(hi, ext.e_max);
    first = false;
  }
  const double span = std::max(hi - lo, 1e-12);
  return {lo - opts.bound_pad * span, hi + opts.bound_pad * span, opts.epsilon};
}

SpectralResult spectral_function(const SectorOperator& op, const KpmOptions& opts) {
  const RescaleInfo window = opts.global_bounds
                                 ? global_rescale_window(op.model(), opts)
                                 : rescale_window(op, opts);
  const auto h = scaled(op, window);
  const auto start = bloch_start_vector(op.sector());
  const auto moments = [&] {
    MomentSet ms = chebyshev_moments(h, start, opts.n_moments);
    ms.k_index = op.sector().j;
    ms.k = op.sector().K;
    return ms;
  }();
  return reconstruct(moments, jackson_factors(opts.n_moments), window);
}

SpectralResult spectral_function(const ModelParams& model, int k_index,
                                 const KpmOptions& opts) {
  auto basis = std::make_shared<const PhononBasis>(model.n_sites, model.n_ph_max);
  const SectorOperator op(make_sector(std::move(basis), k_index), model);
  return spectral_function(op, opts);
}

}  // namespace polaron
