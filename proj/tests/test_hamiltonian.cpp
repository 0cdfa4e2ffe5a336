#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "polaron/hamiltonian.hpp"
#include "polaron/oracle.hpp"

using namespace polaron;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParams model(int n, int nmax, double t0, double g,
                  Boundary b = Boundary::periodic) {
  return {n, nmax, t0, g, b};
}

template <class Op>
Eigen::MatrixXcd dense_from_apply(const Op& op) {
  const Eigen::Index d = op.dim();
  Eigen::MatrixXcd h(d, d);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d), col(d);
  for (Eigen::Index c = 0; c < d; ++c) {
    e[c] = 1.0;
    op.apply(e, col);
    h.col(c) = col;
    e[c] = 0.0;
  }
  return h;
}

// An intentionally non-Hermitian wrapper, as a negative control for the
// hermiticity check.
struct CorruptedOp {
  const SectorOperator* inner;
  Eigen::Index dim() const { return inner->dim(); }
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    inner->apply(in, out);
    out[0] += 1e-3 * in[1];
  }
};

}  // namespace

TEST_CASE("K = 0 Bloch state is an exact eigenstate with eigenvalue -2 t0") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.1, 4.0);
  for (int trial = 0; trial < 12; ++trial) {
    const double t0 = ur(rng), g = ur(rng);
    auto basis = std::make_shared<const PhononBasis>(5, 3);
    const SectorOperator op(make_sector(basis, 0), model(5, 3, t0, g));
    const auto e0 = bloch_start_vector(op.sector());
    const Eigen::VectorXcd he0 = op.apply(e0);
    CHECK((he0 + 2.0 * t0 * e0).norm() < 1e-12);
  }
}

TEST_CASE("matrix-free apply equals the independent dense sector construction") {
  struct Case {
    int n, nmax, j;
  };
  for (const auto& c : {Case{4, 2, 1}, Case{4, 2, 0}, Case{4, 2, 2}, Case{6, 3, 2},
                        Case{6, 3, -1}, Case{3, 2, 1}, Case{2, 3, 1}}) {
    const auto m = model(c.n, c.nmax, 1.3, 0.9);
    auto basis = std::make_shared<const PhononBasis>(c.n, c.nmax);
    const SectorOperator op(make_sector(basis, c.j), m);
    const Eigen::MatrixXcd from_apply = dense_from_apply(op);
    const Eigen::MatrixXcd from_oracle = build_sector_matrix(m, *basis, c.j);
    CAPTURE(c.n);
    CAPTURE(c.j);
    CHECK((from_apply - from_oracle).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("hermiticity") {
  auto basis = std::make_shared<const PhononBasis>(6, 3);
  SUBCASE("free operator") {
    const SectorOperator op(make_sector(basis, 1), model(6, 3, 2.0, 0.0));
    CHECK(hermiticity_check(op, 8) < 1e-12);
  }
  SUBCASE("full operator") {
    const SectorOperator op(make_sector(basis, 2), model(6, 3, 2.0947, 0.9919));
    CHECK(hermiticity_check(op, 8) < 1e-10);
  }
  SUBCASE("negative control") {
    const SectorOperator op(make_sector(basis, 2), model(6, 3, 2.0947, 0.9919));
    const CorruptedOp bad{&op};
    CHECK(hermiticity_check(bad, 8) > 1e-5);
  }
}

TEST_CASE("free spectrum: eigenvalues lie on -2 t0 cos(2 pi j / N) + m") {
  const double t0 = 1.7;
  const auto m = model(5, 2, t0, 0.0);
  const PhononBasis basis(5, 2);
  for (int j : momentum_indices(5)) {
    const Eigen::MatrixXcd h = build_sector_matrix(m, basis, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double e = es.eigenvalues()[i];
      bool on_grid = false;
      for (int jj : momentum_indices(5))
        for (int ph = 0; ph <= 2; ++ph)
          on_grid = on_grid ||
                    std::abs(e - (-2.0 * t0 * std::cos(2.0 * kPi * jj / 5) + ph)) < 1e-10;
      CHECK(on_grid);
    }
  }
}

TEST_CASE("phonon-number off-diagonality: one quantum per term") {
  const auto m = model(4, 3, 1.1, 0.8);
  const PhononBasis basis(4, 3);
  auto bp = std::make_shared<const PhononBasis>(4, 3);
  const Eigen::MatrixXcd h = dense_from_apply(SectorOperator(make_sector(bp, 1), m));
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    int tr = 0;
    for (int v : basis.config(r)) tr += v;
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      int tc = 0;
      for (int v : basis.config(c)) tc += v;
      if (std::abs(tr - tc) > 1) CHECK(std::abs(h(r, c)) == 0.0);
    }
  }
}

TEST_CASE("two-site chain: coupling terms cancel identically") {
  // For N = 2 the two bonds coincide, so the Peierls contributions cancel
  // and the breathing displacement difference vanishes; the sector operator
  // must reduce to the free one for any g.
  auto basis = std::make_shared<const PhononBasis>(2, 3);
  for (int j : {0, 1}) {
    const SectorOperator coupled(make_sector(basis, j), model(2, 3, 1.4, 2.3));
    const SectorOperator free_op(make_sector(basis, j), model(2, 3, 1.4, 0.0));
    CHECK(coupled.breathing_degenerate());
    CHECK((dense_from_apply(coupled) - dense_from_apply(free_op)).cwiseAbs().maxCoeff() <
          1e-12);
  }
  auto b4 = std::make_shared<const PhononBasis>(4, 1);
  CHECK_FALSE(
      SectorOperator(make_sector(b4, 0), model(4, 1, 1.0, 1.0)).breathing_degenerate());
}

TEST_CASE("sector operator rejects mismatched input") {
  auto basis = std::make_shared<const PhononBasis>(4, 2);
  CHECK_THROWS_AS(SectorOperator(make_sector(basis, 0), model(5, 2, 1.0, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      SectorOperator(make_sector(basis, 0), model(4, 2, 1.0, 1.0, Boundary::open)),
      std::invalid_argument);
  const SectorOperator op(make_sector(basis, 0), model(4, 2, 1.0, 1.0));
  Eigen::VectorXcd bad(3), out;
  CHECK_THROWS_AS(op.apply(bad, out), std::invalid_argument);
}

TEST_CASE("real-space operator") {
  const auto m = model(4, 2, 1.3, 0.9);
  auto basis = std::make_shared<const PhononBasis>(4, 2);
  const RealSpaceOperator op(basis, m);
  const auto d = basis->size();

  SUBCASE("H |vacuum, 0 phonons> = 0") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(op.dim());
    v[0] = 1.0;
    CHECK(op.apply(v).norm() == 0.0);
  }

  SUBCASE("vacuum block is the phonon number operator") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(op.dim());
    for (Eigen::Index i = 0; i < d; ++i) v[i] = {gauss(rng), gauss(rng)};
    const auto hv = op.apply(v);
    for (Eigen::Index i = 0; i < d; ++i) {
      int total = 0;
      for (int x : basis->config(i)) total += x;
      CHECK(std::abs(hv[i] - static_cast<double>(total) * v[i]) < 1e-14);
    }
    // excitation-number conservation: no leakage into the site blocks
    CHECK(hv.segment(d, op.dim() - d).norm() == 0.0);
  }

  SUBCASE("matches the literal dense construction elementwise") {
    const Eigen::MatrixXcd from_apply = dense_from_apply(op);
    const Eigen::MatrixXd h1 = build_real_space_matrix(m, *basis);
    CHECK((from_apply.bottomRightCorner(4 * d, 4 * d) - h1.cast<std::complex<double>>())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK(hermiticity_check(op, 6) < 1e-12);
  }

  SUBCASE("g = 0 single-excitation eigenvalues are -2 t0 cos k + m") {
    const auto free_m = model(4, 2, 1.3, 0.0);
    const Eigen::MatrixXd h1 = build_real_space_matrix(free_m, *basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h1, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      bool on_grid = false;
      for (int j : momentum_indices(4))
        for (int ph = 0; ph <= 2; ++ph)
          on_grid = on_grid ||
                    std::abs(es.eigenvalues()[i] -
                             (-2.0 * 1.3 * std::cos(2.0 * kPi * j / 4) + ph)) < 1e-10;
      CHECK(on_grid);
    }
  }

  SUBCASE("union of sector spectra equals the single-excitation block spectrum") {
    const Eigen::MatrixXd h1 = build_real_space_matrix(m, *basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h1, Eigen::EigenvaluesOnly);
    std::vector<double> full(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
    std::vector<double> sectors;
    for (int j : momentum_indices(4)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sec(build_sector_matrix(m, *basis, j),
                                                          Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < sec.eigenvalues().size(); ++i)
        sectors.push_back(sec.eigenvalues()[i]);
    }
    std::sort(sectors.begin(), sectors.end());
    REQUIRE(sectors.size() == full.size());
    for (std::size_t i = 0; i < full.size(); ++i)
      CHECK(sectors[i] == doctest::Approx(full[i]).epsilon(1e-8));
  }
}

TEST_CASE("open boundary drops the wrap terms") {
  const auto m = model(4, 2, 1.3, 0.9, Boundary::open);
  auto basis = std::make_shared<const PhononBasis>(4, 2);
  const RealSpaceOperator op(basis, m);
  CHECK(hermiticity_check(op, 6) < 1e-12);
  const Eigen::MatrixXd h1 = build_real_space_matrix(m, *basis);
  const auto d = basis->size();
  const Eigen::MatrixXcd from_apply = dense_from_apply(op);
  CHECK((from_apply.bottomRightCorner(4 * d, 4 * d) - h1.cast<std::complex<double>>())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  // no direct hop between the chain ends
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(op.dim());
  v[op.site_offset(0)] = 1.0;  // excitation at site 0, no phonons
  const auto hv = op.apply(v);
  CHECK(std::abs(hv[op.site_offset(3)]) == 0.0);
  CHECK(std::abs(hv[op.site_offset(1)] + 1.3) < 1e-15);
}

TEST_CASE("variational monotonicity: ground energy non-increasing in the cutoff") {
  for (int j : {0, 1}) {
    double prev = 1e300;
    for (int nmax = 0; nmax <= 4; ++nmax) {
      const auto spectrum = diagonalize_sector(model(4, nmax, 0.93, 0.99), j);
      CHECK(spectrum.energies[0] <= prev + 1e-12);
      prev = spectrum.energies[0];
    }
  }
}
