// oracle.hpp - brute-force exact diagonalization reference for small chains
#pragma once

#include <Eigen/Dense>

#include "xychain/entangle.hpp"
#include "xychain/model.hpp"
#include "xychain/randfield.hpp"

namespace xychain {

// Exact pure or thermal state over the full sigma^z product basis. Basis index
// bit k = 1 means spin up at site k. Thermal states keep only eigenvectors whose
// Gibbs weight is above a negligible-probability cutoff.
struct DenseState {
  int n_sites = 0;
  Eigen::MatrixXd vectors;  // columns: retained eigenvectors
  Eigen::VectorXd weights;  // matching probabilities, summing to 1
  double ground_energy = 0.0;
  double gap = 0.0;         // E1 - E0 of the full spectrum
  bool degenerate = false;  // gap below 1e-10: pair density matrices ill-defined
};

// Full 2^N x 2^N Hamiltonian in the spin basis; N <= 12 enforced.
Eigen::MatrixXd dense_hamiltonian(const ChainSpec& chain, const FieldSample& field);

// Full sorted spectrum (test helper).
Eigen::VectorXd exact_spectrum(const ChainSpec& chain, const FieldSample& field);

DenseState exact_ground_state(const ChainSpec& chain, const FieldSample& field);
DenseState exact_thermal_state(const ChainSpec& chain, const FieldSample& field, double k_t);

// Reduced 4x4 density matrix of the pair (i, j), i != j, by partial trace.
PairDensityMatrix exact_pair_rho(const DenseState& state, int i, int j);

// Partial trace followed by the general-route Wootters concurrence.
double exact_pair_concurrence(const DenseState& state, int i, int j);

// Largest |pipeline - oracle| concurrence deviation over all non-wrapping pairs
// with separations 1..r_cap. chain.temperature selects ground-state vs thermal
// comparison. Throws std::runtime_error for instances where the comparison is
// ill-posed (degenerate ground state, or a near-zero mode that makes the
// parity-inserted thermal trace ill-conditioned); callers resample those.
double max_pipeline_deviation(const ChainSpec& chain, const FieldSample& field, int r_cap);

}  // namespace xychain
