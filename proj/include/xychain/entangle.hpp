// entangle.hpp - two-site density matrix, concurrence, entanglement of formation
#pragma once

#include <Eigen/Dense>

#include "xychain/correlators.hpp"

namespace xychain {

// 4x4 density matrix in the sigma^z product basis (uu, ud, du, dd).
using PairDensityMatrix = Eigen::Matrix4d;

// Builds the X-shaped two-site density matrix from the four coefficients; throws
// if the result is not positive semidefinite within -1e-9.
PairDensityMatrix assemble_rho(const TwoSiteState& state);

// Concurrence of an X-shaped matrix with vanishing corner entries:
// C = 2 max{0, |rho_23| - sqrt(rho_11 rho_44)}. Production path.
double concurrence(const TwoSiteState& state);
double concurrence(const PairDensityMatrix& rho);

// Wootters concurrence of an arbitrary two-qubit density matrix via the spectrum
// of sqrt(rho) * rho~ * sqrt(rho); cross-check route and oracle path.
double concurrence_general(const PairDensityMatrix& rho);

// E(C): binary-entropy monotone of the concurrence, in [0,1].
double entanglement_of_formation(double c);

}  // namespace xychain
