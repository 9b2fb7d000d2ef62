// fermion.hpp - Jordan-Wigner quadratic form, parity-resolved filling, G matrices
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "xychain/model.hpp"
#include "xychain/randfield.hpp"

namespace xychain {

enum class ParitySector { even, odd };

struct HoppingMatrix {
  Eigen::MatrixXd a;    // real symmetric, N x N
  ParitySector sector;  // fixes the boundary-bond sign on periodic chains
};

struct FermionSpectrum {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd modes;     // orthogonal; column l is the mode of energies[l]
  ParitySector sector;
};

// Matrix of fermionic contractions G_{ij} = 2<a^dag_i a_j> - delta_ij; every spin
// correlator below derives from it.
using GMatrix = Eigen::MatrixXd;

// Spectra of the field-only hopping matrix (uniform field left out). A uniform
// field shifts every level rigidly by -h and leaves the modes untouched, so one
// factorization per sector serves a whole h grid. Open chains have no boundary
// bond; only `even` is populated there.
struct SampleSpectra {
  FermionSpectrum even;
  FermionSpectrum odd;
  Eigen::VectorXd even_prefix;  // prefix sums of the sorted energies
  Eigen::VectorXd odd_prefix;
  Boundary boundary = Boundary::periodic;
};

struct SectorChoice {
  ParitySector sector = ParitySector::even;
  int n_filled = 0;      // N_G: number of occupied modes in the chosen sector
  bool fallback = false; // neither sector was parity-self-consistent
};

HoppingMatrix build_hopping(const ChainSpec& chain, const FieldSample& field, ParitySector sector);

// Dense real-symmetric eigensolve; throws on solver non-convergence.
FermionSpectrum diagonalize(const HoppingMatrix& matrix);

SampleSpectra field_spectra(const ChainSpec& chain, const FieldSample& field);

// Number of modes with energy < h - tol; modes within tol of the Fermi level are
// left empty (deterministic zero-mode tie-break).
int filled_below(const Eigen::VectorXd& energies, double h, double tol = 1e-12);

// Ground-state sector resolution: occupy negative levels in each sector, keep the
// sector whose filling parity matches its own boundary-sign assumption; ties and
// inconsistencies fall back to the lower naive energy.
SectorChoice select_sector(const SampleSpectra& spectra, double h);

// Ground-state G matrix of the finite chain (temperature must be 0).
GMatrix ground_state_g_matrix(const ChainSpec& chain, const FieldSample& field);

// Ground-state energy in the spin frame, i.e. with the additive constant
// sum_j (h + h_j)/2 dropped by the fermionization restored.
double ground_state_energy(const ChainSpec& chain, const FieldSample& field);

// Thermodynamic-limit G over a window of size r_window+1 at T = 0; |h| = J
// (critical point) is rejected.
GMatrix uniform_g_matrix(double h, double j, int r_window);

// Thermodynamic-limit G at temperature k_t > 0 from the Fermi-factor integral,
// each entry to 1e-10 absolute; beta is capped at 1e6.
GMatrix thermal_g_matrix(double h, double j, double k_t, int r_window);

// One Gaussian term of a finite-chain expectation: correlators are evaluated per
// term by Wick's theorem and combined linearly with `weight`. modes/occupation
// carry the factorized contractions <a^dag_i a_j> = sum_l V_il V_jl f_l; they let
// the nearly polarized corner entries <n_i n_j> and <(1-n_i)(1-n_j)> be summed
// over occupied resp. empty modes directly, without the cancellation that
// evaluating them through G incurs.
struct WeightedG {
  double weight;
  GMatrix g;
  Eigen::MatrixXd modes;
  Eigen::VectorXd occupation;
  Eigen::VectorXd vacancy;  // 1 - occupation, evaluated without cancellation
};

// The parity-resolved ground state as a single Gaussian term.
std::vector<WeightedG> ground_state_terms(const ChainSpec& chain, const FieldSample& field);

// Exact finite-chain thermal ensemble at k_t > 0. Open chains map to a single
// Fermi-occupied term. Periodic chains require the parity projection
// rho = e^{-bH_e}P_even + e^{-bH_o}P_odd, which expands into four Gaussian terms
// (plain and parity-inserted traces per sector) with signed weights; weights sum
// to 1 and terms with exactly vanishing weight are omitted.
std::vector<WeightedG> finite_thermal_g_terms(const ChainSpec& chain, const FieldSample& field,
                                              double k_t);

}  // namespace xychain
