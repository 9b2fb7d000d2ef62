// test_oracle.cpp - exact diagonalization reference and pipeline equivalence
#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <vector>

#include "xychain/fermion.hpp"
#include "xychain/oracle.hpp"

using namespace xychain;

namespace {

ChainSpec make_chain(int n, double h, Boundary boundary = Boundary::periodic, double k_t = 0.0) {
  ChainSpec chain;
  chain.n_sites = n;
  chain.uniform_field = h;
  chain.boundary = boundary;
  chain.temperature = k_t;
  return chain;
}

FieldSample zero_field(int n) {
  FieldSample field;
  field.values.assign(n, 0.0);
  return field;
}

FieldSample random_field(int n, std::uint64_t seed, double q, double a) {
  DisorderSpec disorder;
  disorder.q = q;
  disorder.scale_a = a;
  disorder.n_samples = 1;
  disorder.master_seed = seed;
  return sample_field(disorder, n, 0);
}

}  // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("field-dominated two-site chain polarizes") {
  const ChainSpec chain = make_chain(2, 10.0, Boundary::open);
  const DenseState state = exact_ground_state(chain, zero_field(2));
  CHECK(state.ground_energy == doctest::Approx(-10.0).epsilon(1e-12));
  CHECK(std::abs(state.vectors(3, 0)) == doctest::Approx(1.0).epsilon(1e-12));  // |uu>
  CHECK(exact_pair_concurrence(state, 0, 1) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("two-site chain at h=0 forms the symmetric Bell ground state") {
  const ChainSpec chain = make_chain(2, 0.0, Boundary::open);
  const DenseState state = exact_ground_state(chain, zero_field(2));
  CHECK(state.ground_energy == doctest::Approx(-0.5).epsilon(1e-12));
  // amplitudes on |ud> (index 1) and |du> (index 2)
  CHECK(std::abs(state.vectors(1, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(state.vectors(2, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(exact_pair_concurrence(state, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degeneracy flag on a constructed level crossing") {
  // two-site open spectrum is {-h, -J/2, +J/2, +h}: degenerate at h = J/2
  const DenseState state = exact_ground_state(make_chain(2, 0.5, Boundary::open), zero_field(2));
  CHECK(state.degenerate);
  CHECK(state.gap < 1e-10);
}

TEST_CASE("two-site spectrum and Gibbs weights match the analytic four-level sum") {
  const double h = 0.3;
  const ChainSpec chain = make_chain(2, h, Boundary::open);
  const Eigen::VectorXd spectrum = exact_spectrum(chain, zero_field(2));
  std::vector<double> expected{-h, -0.5, 0.5, h};
  std::sort(expected.begin(), expected.end());
  for (int k = 0; k < 4; ++k)
    CHECK(spectrum(k) == doctest::Approx(expected[k]).epsilon(1e-12));

  const double k_t = 0.7;
  const DenseState thermal = exact_thermal_state(chain, zero_field(2), k_t);
  double z = 0.0;
  for (double e : expected) z += std::exp(-(e - expected[0]) / k_t);
  REQUIRE(thermal.weights.size() == 4);
  for (int k = 0; k < 4; ++k)
    CHECK(thermal.weights(k) ==
          doctest::Approx(std::exp(-(expected[k] - expected[0]) / k_t) / z).epsilon(1e-12));
}

TEST_CASE("infinite-temperature limit weights become uniform") {
  const ChainSpec chain = make_chain(4, 0.4);
  const DenseState state = exact_thermal_state(chain, zero_field(4), 1e8);
  REQUIRE(state.weights.size() == 16);
  for (int k = 0; k < 16; ++k)
    CHECK(state.weights(k) == doctest::Approx(1.0 / 16.0).epsilon(1e-6));
}

TEST_CASE("cold thermal state approaches the ground-state projector") {
  const ChainSpec chain = make_chain(6, 0.37);
  const FieldSample field = random_field(6, 5, 1.0, 0.3);
  const DenseState ground = exact_ground_state(chain, field);
  REQUIRE(!ground.degenerate);
  const double k_t = ground.gap / 1000.0;
  const DenseState cold = exact_thermal_state(chain, field, k_t);
  for (int r = 1; r <= 2; ++r)
    CHECK(exact_pair_concurrence(cold, 0, r) ==
          doctest::Approx(exact_pair_concurrence(ground, 0, r)).epsilon(1e-10).scale(1.0));
}

TEST_CASE("size cap enforced") {
  CHECK_THROWS_AS(dense_hamiltonian(make_chain(13, 0.0), zero_field(13)),
                  std::invalid_argument);
}

TEST_CASE("fermionization constant restores the spin-frame energy") {
  // N=2 analytic lock: spin ground energy -J/2 at h=0, -h for large h
  CHECK(ground_state_energy(make_chain(2, 0.0, Boundary::open), zero_field(2)) ==
        doctest::Approx(-0.5).epsilon(1e-12));

  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    for (Boundary b : {Boundary::periodic, Boundary::open}) {
      const int n = 8;
      const ChainSpec chain = make_chain(n, 0.45, b);
      const FieldSample field = random_field(n, seed, 2.0, 0.5);
      const DenseState state = exact_ground_state(chain, field);
      if (state.degenerate) continue;
      CHECK(ground_state_energy(chain, field) ==
            doctest::Approx(state.ground_energy).epsilon(1e-9));
    }
  }
}

TEST_CASE("pipeline equivalence spot checks") {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = (seed % 2 == 0) ? 6 : 8;
    const double h = 0.1 + 0.2 * double(seed);
    const Boundary b = (seed % 3 == 0) ? Boundary::open : Boundary::periodic;
    const double k_t = (seed < 3) ? 0.0 : 0.25;
    const ChainSpec chain = make_chain(n, h, b, k_t);
    const FieldSample field = random_field(n, 100 + seed, seed < 3 ? 1.0 : 2.0, 0.4);
    try {
      CHECK(max_pipeline_deviation(chain, field, n / 2 - 1) < 1e-9);
      ++compared;
    } catch (const std::runtime_error&) {
      // degenerate instance; skipped
    }
  }
  CHECK(compared >= 4);
}

TEST_SUITE_END();
