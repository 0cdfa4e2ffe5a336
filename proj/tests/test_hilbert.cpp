#include <doctest.h>

#include <numbers>
#include <random>
#include <set>

#include "polaron/errors.hpp"
#include "polaron/hilbert.hpp"

using namespace polaron;

namespace {

// Brute-force binomial, independent of the library's table.
long long binom_ref(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("enumeration of the smallest cases") {
  const PhononBasis basis(2, 1);
  REQUIRE(basis.size() == 3);
  CHECK(basis.config(0) == PhononConfig{0, 0});
  CHECK(basis.config(1) == PhononConfig{1, 0});
  CHECK(basis.config(2) == PhononConfig{0, 1});
}

TEST_CASE("dimension formula") {
  CHECK(PhononBasis::dimension(10, 8) == 43758);
  CHECK(PhononBasis::dimension(10, 18) == 13123110);
  CHECK(PhononBasis(10, 8).size() == 43758);
  // Size is available even past materialization scale; only construction
  // against a budget is gated.
  CHECK(PhononBasis(10, 18).size() == 13123110);
  CHECK_THROWS_AS(PhononBasis(10, 18, /*max_dim=*/1000000), CapacityError);
}

TEST_CASE("count equals the closed-form binomial for all N <= 8, cutoff <= 6") {
  for (int n = 1; n <= 8; ++n)
    for (int c = 0; c <= 6; ++c)
      CHECK(PhononBasis::dimension(n, c) == binom_ref(n + c, n));
}

TEST_CASE("rank/unrank round trip and ordering") {
  for (int n : {1, 2, 3, 5}) {
    for (int c : {0, 1, 3, 4}) {
      const PhononBasis basis(n, c);
      std::set<PhononConfig> seen;
      int prev_total = -1;
      for (std::int64_t i = 0; i < basis.size(); ++i) {
        const auto cfg = basis.config(i);
        CHECK(basis.index_of(cfg) == i);
        int total = 0;
        for (int v : cfg) total += v;
        CHECK(total <= c);
        CHECK(total >= prev_total);  // graded order
        prev_total = std::max(prev_total, total);
        seen.insert(cfg);
      }
      CHECK(static_cast<std::int64_t>(seen.size()) == basis.size());
    }
  }
}

TEST_CASE("index_of rejects bad configs") {
  const PhononBasis basis(3, 2);
  CHECK_THROWS_AS(basis.index_of({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(basis.index_of({1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(basis.index_of({-1, 0, 0}), std::invalid_argument);
}

TEST_CASE("translate") {
  CHECK(translate({2, 0, 1}, 1) == PhononConfig{1, 2, 0});
  CHECK(translate({4, 7, 1, 2}, 0) == PhononConfig{4, 7, 1, 2});
  CHECK(translate(translate({1, 2, 3, 4}, 2), 2) == PhononConfig{1, 2, 3, 4});

  SUBCASE("additive composition, bijection, total preservation") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> occ(0, 3);
    const int n = 6;
    const PhononBasis basis(n, 18);
    for (int trial = 0; trial < 50; ++trial) {
      PhononConfig cfg(n);
      for (auto& v : cfg) v = occ(rng);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          CHECK(translate(translate(cfg, a), b) == translate(cfg, (a + b) % n));
    }
    // bijection on the whole basis for every shift
    const PhononBasis small(4, 3);
    for (int shift = 0; shift < 4; ++shift) {
      std::set<std::int64_t> image;
      for (std::int64_t i = 0; i < small.size(); ++i) {
        const auto cfg = small.config(i);
        int before = 0, after = 0;
        for (int v : cfg) before += v;
        const auto moved = translate(cfg, shift);
        for (int v : moved) after += v;
        CHECK(before == after);
        image.insert(small.index_of(moved));
      }
      CHECK(static_cast<std::int64_t>(image.size()) == small.size());
    }
  }
}

TEST_CASE("allowed momenta") {
  constexpr double pi = std::numbers::pi;
  SUBCASE("N = 10 contains the paper's six non-negative values") {
    const auto ks = allowed_momenta(10);
    CHECK(ks.size() == 10);
    for (double expect : {0.0, pi / 5, 2 * pi / 5, 3 * pi / 5, 4 * pi / 5, pi}) {
      bool found = false;
      for (double k : ks) found = found || std::abs(k - expect) < 1e-14;
      CHECK(found);
    }
  }
  SUBCASE("small N") {
    CHECK(allowed_momenta(2) == std::vector<double>{0.0, pi});
    const auto k3 = allowed_momenta(3);
    REQUIRE(k3.size() == 3);
    CHECK(k3[0] == doctest::Approx(-2 * pi / 3));
    CHECK(k3[1] == 0.0);
    CHECK(k3[2] == doctest::Approx(2 * pi / 3));
  }
  SUBCASE("all values in (-pi, pi]") {
    for (int n = 2; n <= 12; ++n) {
      const auto ks = allowed_momenta(n);
      CHECK(ks.size() == static_cast<std::size_t>(n));
      for (double k : ks) {
        CHECK(k > -pi - 1e-15);
        CHECK(k <= pi + 1e-15);
      }
    }
  }
}

TEST_CASE("bloch start vector") {
  auto basis = std::make_shared<const PhononBasis>(4, 2);
  const auto sector = make_sector(basis, 1);
  const auto v = bloch_start_vector(sector);
  CHECK(v.size() == basis->size());
  CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(std::abs(v[basis->index_of({0, 0, 0, 0})] - 1.0) < 1e-15);
  for (std::int64_t i = 1; i < basis->size(); ++i) CHECK(std::abs(v[i]) == 0.0);

  CHECK_THROWS_AS(make_sector(basis, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_sector(basis, -2), std::invalid_argument);
  CHECK(make_sector(basis, 2).K == doctest::Approx(std::numbers::pi));
}
