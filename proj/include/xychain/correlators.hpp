// correlators.hpp - one- and two-point spin correlators from fermionic contractions
#pragma once

#include <span>

#include "xychain/fermion.hpp"

namespace xychain {

// The four coefficients that determine a two-site reduced density matrix of this
// model; everything else vanishes by symmetry. rho_uu and rho_dd are the two
// corner diagonal entries ((1 +- sz_i +- sz_j + szsz)/4 algebraically); they are
// carried separately because the pipeline can evaluate them without the
// cancellation of that combination, which matters for nearly polarized pairs
// where they underflow to ~1e-12 on an O(1) background.
struct TwoSiteState {
  int site_i = 0;
  int site_j = 0;
  double sz_i = 0.0;    // <sigma^z_i>
  double sz_j = 0.0;    // <sigma^z_j>
  double sxsx = 0.0;    // <sigma^x_i sigma^x_j> = <sigma^y_i sigma^y_j>
  double szsz = 0.0;    // <sigma^z_i sigma^z_j>
  double rho_uu = 0.0;  // <n_i n_j>: up-up diagonal entry
  double rho_dd = 0.0;  // <(1-n_i)(1-n_j)>: down-down diagonal entry
};

// <sigma^z_i> = G_{ii}
double sigma_z(const GMatrix& g, int i);

// <sigma^z_i sigma^z_j> = G_{ii} G_{jj} - G_{ij} G_{ji}
double sigma_zz(const GMatrix& g, int i, int j);

// <sigma^x_i sigma^x_j>, i < j: determinant of the (j-i)x(j-i) matrix with
// entries G_{i+r, i+s+1}, r,s = 0..j-i-1. Valid for any pair whose string runs
// inside the stored index range (non-wrapping pairs on periodic chains).
double sigma_xx(const GMatrix& g, int i, int j);

// All four coefficients for one pair. Magnitudes within 1e-9 of 1 are clamped to
// +-1; larger violations throw (upstream numerical fault).
TwoSiteState two_site_state(const GMatrix& g, int i, int j);

// Applies the same clamp policy to externally computed coefficients; the corner
// diagonal entries are derived from the coefficient combination.
TwoSiteState clamped_two_site_state(int i, int j, double sz_i, double sz_j, double sxsx,
                                    double szsz);

// Same, with separately computed corner diagonal entries (clamped into [0,1]).
TwoSiteState clamped_two_site_state(int i, int j, double sz_i, double sz_j, double sxsx,
                                    double szsz, double rho_uu, double rho_dd);

// Thermal version: per-term Wick values combined linearly with the term weights.
TwoSiteState two_site_state(std::span<const WeightedG> terms, int i, int j);

}  // namespace xychain
