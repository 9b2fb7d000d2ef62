// correlators.cpp - determinant formulas for the spin correlation functions
#include "xychain/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xychain {

namespace {

void check_site(const GMatrix& g, int i) {
  if (i < 0 || i >= g.rows())
    throw std::out_of_range("site index " + std::to_string(i) + " outside G matrix of size " +
                            std::to_string(g.rows()));
}

double clamp_unit(double value, const char* name) {
  if (std::abs(value) <= 1.0) return value;
  if (std::abs(value) <= 1.0 + 1e-9) return std::copysign(1.0, value);
  throw std::runtime_error(std::string(name) + " magnitude " + std::to_string(std::abs(value)) +
                           " exceeds 1 beyond tolerance");
}

double clamp_probability(double value, const char* name) {
  if (value >= 0.0 && value <= 1.0) return value;
  if (value >= -1e-9 && value <= 1.0 + 1e-9) return std::clamp(value, 0.0, 1.0);
  throw std::runtime_error(std::string(name) + " = " + std::to_string(value) +
                           " outside [0,1] beyond tolerance");
}

}  // namespace

double sigma_z(const GMatrix& g, int i) {
  check_site(g, i);
  return g(i, i);
}

double sigma_zz(const GMatrix& g, int i, int j) {
  check_site(g, i);
  check_site(g, j);
  if (i == j) throw std::invalid_argument("sigma_zz requires distinct sites");
  return g(i, i) * g(j, j) - g(i, j) * g(j, i);
}

double sigma_xx(const GMatrix& g, int i, int j) {
  check_site(g, i);
  check_site(g, j);
  if (!(i < j)) throw std::invalid_argument("sigma_xx requires i < j");
  const int m = j - i;
  if (m == 1) return g(i, i + 1);
  // Shifted window: rows i..j-1, columns i+1..j. Partial-pivot LU determinant.
  Eigen::MatrixXd window = g.block(i, i + 1, m, m);
  return window.determinant();
}

TwoSiteState clamped_two_site_state(int i, int j, double sz_i, double sz_j, double sxsx,
                                    double szsz) {
  const double rho_uu = 0.25 * (1.0 + sz_i + sz_j + szsz);
  const double rho_dd = 0.25 * (1.0 - sz_i - sz_j + szsz);
  return clamped_two_site_state(i, j, sz_i, sz_j, sxsx, szsz, rho_uu, rho_dd);
}

TwoSiteState clamped_two_site_state(int i, int j, double sz_i, double sz_j, double sxsx,
                                    double szsz, double rho_uu, double rho_dd) {
  TwoSiteState state;
  state.site_i = i;
  state.site_j = j;
  state.sz_i = clamp_unit(sz_i, "<sz_i>");
  state.sz_j = clamp_unit(sz_j, "<sz_j>");
  state.sxsx = clamp_unit(sxsx, "<sxsx>");
  state.szsz = clamp_unit(szsz, "<szsz>");
  state.rho_uu = clamp_probability(rho_uu, "<n_i n_j>");
  state.rho_dd = clamp_probability(rho_dd, "<(1-n_i)(1-n_j)>");
  return state;
}

TwoSiteState two_site_state(const GMatrix& g, int i, int j) {
  return clamped_two_site_state(i, j, sigma_z(g, i), sigma_z(g, j), sigma_xx(g, i, j),
                                sigma_zz(g, i, j));
}

TwoSiteState two_site_state(std::span<const WeightedG> terms, int i, int j) {
  if (terms.empty()) throw std::invalid_argument("two_site_state: empty term list");
  double sz_i = 0.0, sz_j = 0.0, sxsx = 0.0, szsz = 0.0;
  double rho_uu = 0.0, rho_dd = 0.0;
  bool stable_corners = true;
  for (const WeightedG& term : terms) {
    sz_i += term.weight * sigma_z(term.g, i);
    sz_j += term.weight * sigma_z(term.g, j);
    szsz += term.weight * sigma_zz(term.g, i, j);
    sxsx += term.weight * sigma_xx(term.g, i, j);
    if (term.modes.size() == 0) {
      stable_corners = false;
      continue;
    }
    // Per-term Wick corners from mode sums: <n_i n_j> = w_ii w_jj - w_ij^2 with
    // w_pq = sum_l V_pl V_ql f_l, and the hole analogue over the vacancies.
    const auto vi = term.modes.row(i);
    const auto vj = term.modes.row(j);
    const double w_ii = vi.cwiseProduct(vi).dot(term.occupation.transpose());
    const double w_jj = vj.cwiseProduct(vj).dot(term.occupation.transpose());
    const double w_ij = vi.cwiseProduct(vj).dot(term.occupation.transpose());
    const double h_ii = vi.cwiseProduct(vi).dot(term.vacancy.transpose());
    const double h_jj = vj.cwiseProduct(vj).dot(term.vacancy.transpose());
    const double h_ij = vi.cwiseProduct(vj).dot(term.vacancy.transpose());
    rho_uu += term.weight * (w_ii * w_jj - w_ij * w_ij);
    rho_dd += term.weight * (h_ii * h_jj - h_ij * h_ij);
  }
  if (!stable_corners) return clamped_two_site_state(i, j, sz_i, sz_j, sxsx, szsz);
  return clamped_two_site_state(i, j, sz_i, sz_j, sxsx, szsz, rho_uu, rho_dd);
}

}  // namespace xychain
