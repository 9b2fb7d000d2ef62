// oracle.cpp - exact diagonalization of the spin Hamiltonian without fermionization
#include "xychain/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace xychain {

namespace {

constexpr int kMaxSites = 12;

void check_size(int n) {
  if (n > kMaxSites)
    throw std::invalid_argument("exact diagonalization capped at N <= 12, got N = " +
                                std::to_string(n));
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve(const ChainSpec& chain,
                                                     const FieldSample& field) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_hamiltonian(chain, field));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("exact diagonalization failed to converge");
  return solver;
}

}  // namespace

Eigen::MatrixXd dense_hamiltonian(const ChainSpec& chain, const FieldSample& field) {
  const int n = chain.n_sites;
  check_size(n);
  if (static_cast<int>(field.values.size()) != n)
    throw std::invalid_argument("field sample length does not match n_sites");

  const long dim = 1L << n;
  const int n_bonds = (chain.boundary == Boundary::periodic) ? n : n - 1;
  Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(dim, dim);
  for (long s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int k = 0; k < n; ++k) {
      const double sz = (s >> k & 1) ? 1.0 : -1.0;
      diag += -0.5 * (chain.uniform_field + field.values[k]) * sz;
    }
    ham(s, s) = diag;
    // -J/4 (sx sx + sy sy) exchanges antiparallel neighbors with amplitude -J/2.
    for (int b = 0; b < n_bonds; ++b) {
      const int k = b;
      const int l = (b + 1) % n;
      const int bit_k = s >> k & 1;
      const int bit_l = s >> l & 1;
      if (bit_k != bit_l) {
        const long flipped = s ^ (1L << k) ^ (1L << l);
        ham(flipped, s) += -0.5 * chain.coupling;
      }
    }
  }
  return ham;
}

Eigen::VectorXd exact_spectrum(const ChainSpec& chain, const FieldSample& field) {
  return solve(chain, field).eigenvalues();
}

DenseState exact_ground_state(const ChainSpec& chain, const FieldSample& field) {
  const auto solver = solve(chain, field);
  DenseState state;
  state.n_sites = chain.n_sites;
  state.vectors = solver.eigenvectors().col(0);
  state.weights = Eigen::VectorXd::Ones(1);
  state.ground_energy = solver.eigenvalues()(0);
  state.gap = solver.eigenvalues()(1) - solver.eigenvalues()(0);
  state.degenerate = state.gap < 1e-10;
  return state;
}

DenseState exact_thermal_state(const ChainSpec& chain, const FieldSample& field, double k_t) {
  if (!(k_t > 0.0)) throw std::invalid_argument("exact_thermal_state requires k_t > 0");
  const auto solver = solve(chain, field);
  const Eigen::VectorXd& energies = solver.eigenvalues();
  const double beta = 1.0 / k_t;

  Eigen::VectorXd raw = (-beta * (energies.array() - energies(0))).exp();
  const double z = raw.sum();

  // Drop negligible-probability states; keeps thermal partial traces cheap.
  constexpr double cutoff = 1e-17;
  std::vector<int> kept;
  for (int k = 0; k < raw.size(); ++k)
    if (raw(k) / z > cutoff) kept.push_back(k);

  DenseState state;
  state.n_sites = chain.n_sites;
  state.vectors.resize(solver.eigenvectors().rows(), kept.size());
  state.weights.resize(kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    state.vectors.col(c) = solver.eigenvectors().col(kept[c]);
    state.weights(c) = raw(kept[c]);
  }
  state.weights /= state.weights.sum();
  state.ground_energy = energies(0);
  state.gap = energies(1) - energies(0);
  return state;
}

PairDensityMatrix exact_pair_rho(const DenseState& state, int i, int j) {
  const int n = state.n_sites;
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("exact_pair_rho requires two distinct sites in range");

  const long dim = 1L << n;
  const long mask = (1L << i) | (1L << j);
  PairDensityMatrix rho = PairDensityMatrix::Zero();
  Eigen::Vector4d v;
  for (int k = 0; k < state.weights.size(); ++k) {
    const auto& psi = state.vectors.col(k);
    const double w = state.weights(k);
    for (long base = 0; base < dim; ++base) {
      if (base & mask) continue;
      // basis order (uu, ud, du, dd) with up = occupied bit
      v(0) = psi(base | (1L << i) | (1L << j));
      v(1) = psi(base | (1L << i));
      v(2) = psi(base | (1L << j));
      v(3) = psi(base);
      rho.noalias() += w * (v * v.transpose());
    }
  }
  return rho;
}

double exact_pair_concurrence(const DenseState& state, int i, int j) {
  return concurrence_general(exact_pair_rho(state, i, j));
}

double max_pipeline_deviation(const ChainSpec& chain, const FieldSample& field, int r_cap) {
  const int n = chain.n_sites;
  const double k_t = chain.temperature;

  DenseState reference;
  std::vector<WeightedG> terms;
  if (k_t == 0.0) {
    reference = exact_ground_state(chain, field);
    // Near-degenerate references are resampled: the exact eigenvector itself
    // carries O(eps/gap) mixing error, which would swamp a 1e-9 comparison.
    if (reference.gap < 1e-6)
      throw std::runtime_error("near-degenerate ground state (gap " +
                               std::to_string(reference.gap) + "); instance not comparable");
    terms = ground_state_terms(chain, field);
  } else {
    if (chain.boundary == Boundary::periodic) {
      // A mode pinned to the Fermi level makes the parity-inserted trace a 0 * inf
      // product; such instances are resampled rather than compared.
      const SampleSpectra spectra = field_spectra(chain, field);
      const double beta = 1.0 / k_t;
      for (const FermionSpectrum* s : {&spectra.even, &spectra.odd})
        for (Eigen::Index l = 0; l < s->energies.size(); ++l) {
          const double x = beta * (s->energies(l) - chain.uniform_field);
          if (std::abs(std::expm1(-x)) < 1e-4)
            throw std::runtime_error("near-zero mode; parity-inserted trace ill-conditioned");
        }
    }
    reference = exact_thermal_state(chain, field, k_t);
    terms = finite_thermal_g_terms(chain, field, k_t);
  }

  double worst = 0.0;
  for (int r = 1; r <= r_cap; ++r) {
    for (int i = 0; i + r < n; ++i) {
      const TwoSiteState state = two_site_state(std::span<const WeightedG>(terms), i, i + r);
      const double pipeline = concurrence(state);
      const double exact = exact_pair_concurrence(reference, i, i + r);
      worst = std::max(worst, std::abs(pipeline - exact));
    }
  }
  return worst;
}

}  // namespace xychain
