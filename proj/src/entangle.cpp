// entangle.cpp - concurrence and entanglement of formation
#include "xychain/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xychain {

namespace {

// sigma^y (x) sigma^y in the (uu, ud, du, dd) basis; real since rho is real here.
const PairDensityMatrix& spin_flip() {
  static const PairDensityMatrix yy = [] {
    PairDensityMatrix m = PairDensityMatrix::Zero();
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return yy;
}

}  // namespace

PairDensityMatrix assemble_rho(const TwoSiteState& s) {
  PairDensityMatrix rho = PairDensityMatrix::Zero();
  rho(0, 0) = 0.25 * (1.0 + s.sz_i + s.sz_j + s.szsz);
  rho(1, 1) = 0.25 * (1.0 + s.sz_i - s.sz_j - s.szsz);
  rho(2, 2) = 0.25 * (1.0 - s.sz_i + s.sz_j - s.szsz);
  rho(3, 3) = 0.25 * (1.0 - s.sz_i - s.sz_j + s.szsz);
  rho(1, 2) = 0.5 * s.sxsx;
  rho(2, 1) = 0.5 * s.sxsx;

  // PSD of an X matrix with empty corners: nonnegative diagonal and
  // rho_22 rho_33 >= rho_23^2.
  constexpr double tol = 1e-9;
  const double min_diag = rho.diagonal().minCoeff();
  const double block = rho(1, 1) * rho(2, 2) - rho(1, 2) * rho(1, 2);
  if (min_diag < -tol || block < -tol)
    throw std::runtime_error("two-site density matrix not positive semidefinite (min diag " +
                             std::to_string(min_diag) + ", ud/du block " + std::to_string(block) +
                             ")");
  return rho;
}

double concurrence(const TwoSiteState& s) {
  return std::max(0.0, 2.0 * (0.5 * std::abs(s.sxsx) - std::sqrt(s.rho_uu * s.rho_dd)));
}

double concurrence(const PairDensityMatrix& rho) {
  const double p11 = std::max(0.0, rho(0, 0));
  const double p44 = std::max(0.0, rho(3, 3));
  return std::max(0.0, 2.0 * (std::abs(rho(1, 2)) - std::sqrt(p11 * p44)));
}

double concurrence_general(const PairDensityMatrix& rho) {
  // The Hermitian problem sqrt(rho) * rho~ * sqrt(rho) factorizes for real rho as
  // S^2 with S = sqrt(rho) * (sy x sy) * sqrt(rho) symmetric; the Wootters
  // lambdas are |eig(S)|. Reading them off S avoids squaring, which would turn
  // O(eps) eigenvalue noise into O(sqrt(eps)) errors for near-pure states.
  Eigen::SelfAdjointEigenSolver<PairDensityMatrix> rho_solver(rho);
  if (rho_solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed on two-site density matrix");
  Eigen::Vector4d d = rho_solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const PairDensityMatrix sqrt_rho =
      rho_solver.eigenvectors() * d.asDiagonal() * rho_solver.eigenvectors().transpose();

  const PairDensityMatrix s = sqrt_rho * spin_flip() * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<PairDensityMatrix> s_solver(s);
  if (s_solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed on the spin-flip overlap matrix");
  Eigen::Vector4d lambda = s_solver.eigenvalues().cwiseAbs();
  std::sort(lambda.data(), lambda.data() + 4, std::greater<double>());
  return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

double entanglement_of_formation(double c) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::invalid_argument("concurrence out of [0,1]: " + std::to_string(c));
  const auto plogp = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  return plogp(x) + plogp(1.0 - x);
}

}  // namespace xychain
