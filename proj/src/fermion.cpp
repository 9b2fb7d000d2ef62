// fermion.cpp - free-fermion engine for the isotropic XY chain in a site field
#include "xychain/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "xychain/quadrature.hpp"

namespace xychain {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBetaCap = 1e6;

// Fermi occupation 1/(1 + e^x), overflow-safe.
double fermi(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

// Occupation of the parity-inserted trace: -e^{-x}/(1 - e^{-x}).
double parity_weighted_occupation(double x) {
  if (x > 0.0) return std::exp(-x) / std::expm1(-x);
  return -1.0 / std::expm1(x);
}

// Its complement 1/(1 - e^{-x}); kept separate so deep tails stay relatively exact.
double parity_weighted_vacancy(double x) { return -1.0 / std::expm1(-x); }

// log|1 + e^{-x}|
double log_z_factor(double x) {
  if (x >= 0.0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

// log|1 - e^{-x}|; the sign is negative exactly when x < 0.
double log_zt_factor(double x) { return std::log(std::abs(std::expm1(-x))); }

GMatrix occupation_g(const Eigen::MatrixXd& modes, const Eigen::VectorXd& occupation) {
  GMatrix g = 2.0 * (modes * occupation.asDiagonal() * modes.transpose());
  g.diagonal().array() -= 1.0;
  return g;
}

}  // namespace

HoppingMatrix build_hopping(const ChainSpec& chain, const FieldSample& field,
                            ParitySector sector) {
  const int n = chain.n_sites;
  if (static_cast<int>(field.values.size()) != n)
    throw std::invalid_argument("field sample length " + std::to_string(field.values.size()) +
                                " does not match n_sites " + std::to_string(n));

  const double hop = -0.5 * chain.coupling;
  HoppingMatrix matrix{Eigen::MatrixXd::Zero(n, n), sector};
  for (int i = 0; i < n; ++i) matrix.a(i, i) = -chain.uniform_field - field.values[i];
  for (int i = 0; i + 1 < n; ++i) {
    matrix.a(i, i + 1) = hop;
    matrix.a(i + 1, i) = hop;
  }
  if (chain.boundary == Boundary::periodic) {
    // Boundary bond carries the opposite sign of the bulk in the even-parity
    // sector (antiperiodic fermions) and the bulk sign in the odd sector.
    const double corner = (sector == ParitySector::even) ? -hop : hop;
    matrix.a(0, n - 1) = corner;
    matrix.a(n - 1, 0) = corner;
  }
  return matrix;
}

FermionSpectrum diagonalize(const HoppingMatrix& matrix) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix.a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge on hopping matrix of size " +
                             std::to_string(matrix.a.rows()));
  return FermionSpectrum{solver.eigenvalues(), solver.eigenvectors(), matrix.sector};
}

SampleSpectra field_spectra(const ChainSpec& chain, const FieldSample& field) {
  ChainSpec base = chain;
  base.uniform_field = 0.0;

  SampleSpectra spectra;
  spectra.boundary = chain.boundary;
  spectra.even = diagonalize(build_hopping(base, field, ParitySector::even));
  auto prefix = [](const Eigen::VectorXd& e) {
    Eigen::VectorXd p(e.size() + 1);
    p(0) = 0.0;
    for (Eigen::Index l = 0; l < e.size(); ++l) p(l + 1) = p(l) + e(l);
    return p;
  };
  spectra.even_prefix = prefix(spectra.even.energies);
  if (chain.boundary == Boundary::periodic) {
    spectra.odd = diagonalize(build_hopping(base, field, ParitySector::odd));
    spectra.odd_prefix = prefix(spectra.odd.energies);
  }
  return spectra;
}

int filled_below(const Eigen::VectorXd& energies, double h, double tol) {
  const double* begin = energies.data();
  const double* end = begin + energies.size();
  return static_cast<int>(std::lower_bound(begin, end, h - tol) - begin);
}

SectorChoice select_sector(const SampleSpectra& spectra, double h) {
  if (spectra.boundary == Boundary::open)
    return SectorChoice{ParitySector::even, filled_below(spectra.even.energies, h), false};

  const int n_even = filled_below(spectra.even.energies, h);
  const int n_odd = filled_below(spectra.odd.energies, h);
  const bool even_ok = (n_even % 2 == 0);
  const bool odd_ok = (n_odd % 2 == 1);
  const double e_even = spectra.even_prefix(n_even) - n_even * h;
  const double e_odd = spectra.odd_prefix(n_odd) - n_odd * h;
  const bool even_lower = e_even <= e_odd;

  if (even_ok != odd_ok)
    return even_ok ? SectorChoice{ParitySector::even, n_even, false}
                   : SectorChoice{ParitySector::odd, n_odd, false};
  return even_lower ? SectorChoice{ParitySector::even, n_even, !even_ok}
                    : SectorChoice{ParitySector::odd, n_odd, !odd_ok};
}

GMatrix ground_state_g_matrix(const ChainSpec& chain, const FieldSample& field) {
  if (chain.temperature != 0.0)
    throw std::invalid_argument("ground_state_g_matrix requires temperature = 0");
  const SampleSpectra spectra = field_spectra(chain, field);
  const SectorChoice choice = select_sector(spectra, chain.uniform_field);
  const FermionSpectrum& s =
      (choice.sector == ParitySector::even) ? spectra.even : spectra.odd;

  const auto filled = s.modes.leftCols(choice.n_filled);
  GMatrix g = 2.0 * (filled * filled.transpose());
  g.diagonal().array() -= 1.0;
  return g;
}

double ground_state_energy(const ChainSpec& chain, const FieldSample& field) {
  const SampleSpectra spectra = field_spectra(chain, field);
  const SectorChoice choice = select_sector(spectra, chain.uniform_field);
  const Eigen::VectorXd& prefix =
      (choice.sector == ParitySector::even) ? spectra.even_prefix : spectra.odd_prefix;
  double energy = prefix(choice.n_filled) - choice.n_filled * chain.uniform_field;
  for (double hj : field.values) energy += 0.5 * (chain.uniform_field + hj);
  return energy;
}

GMatrix uniform_g_matrix(double h, double j, int r_window) {
  if (!(j > 0.0)) throw std::invalid_argument("uniform_g_matrix requires J > 0");
  if (r_window < 0) throw std::invalid_argument("uniform_g_matrix requires r_window >= 0");
  if (std::abs(std::abs(h) - j) < 1e-12)
    throw std::invalid_argument("uniform_g_matrix rejected at the critical point |h| = J");

  const int m = r_window + 1;
  if (h > j) return Eigen::MatrixXd::Identity(m, m);
  if (h < -j) return -Eigen::MatrixXd::Identity(m, m);

  const double kf = std::acos(-h / j);
  GMatrix g(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int d = a - b;
      g(a, b) = (d == 0) ? -1.0 + 2.0 * kf / kPi : 2.0 / kPi * std::sin(d * kf) / d;
    }
  return g;
}

GMatrix thermal_g_matrix(double h, double j, double k_t, int r_window) {
  if (!(k_t > 0.0)) throw std::invalid_argument("thermal_g_matrix requires k_t > 0");
  if (!(j > 0.0)) throw std::invalid_argument("thermal_g_matrix requires J > 0");
  const double beta = std::min(1.0 / k_t, kBetaCap);

  // g(n) = -delta_{n0} + (2/pi) Int_0^pi cos(n phi) / (1 + exp(-beta(J cos phi + h))) dphi.
  // At low temperature the Fermi factor steps at phi = arccos(-h/J); splitting
  // there keeps the adaptive rule from stalling on the quasi-step.
  const double split = (std::abs(h) < j) ? std::acos(-h / j) : -1.0;
  std::vector<double> by_distance(r_window + 1);
  for (int n = 0; n <= r_window; ++n) {
    auto integrand = [&](double phi) {
      return std::cos(n * phi) * fermi(-beta * (j * std::cos(phi) + h));
    };
    const double value = integrate_split(integrand, 0.0, kPi, {split}, 1e-11);
    by_distance[n] = (n == 0 ? -1.0 : 0.0) + 2.0 / kPi * value;
  }

  const int m = r_window + 1;
  GMatrix g(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) g(a, b) = by_distance[std::abs(a - b)];
  return g;
}

std::vector<WeightedG> finite_thermal_g_terms(const ChainSpec& chain, const FieldSample& field,
                                              double k_t) {
  if (!(k_t > 0.0)) throw std::invalid_argument("finite_thermal_g_terms requires k_t > 0");
  const double beta = std::min(1.0 / k_t, kBetaCap);
  const double h = chain.uniform_field;
  const SampleSpectra spectra = field_spectra(chain, field);

  if (chain.boundary == Boundary::open) {
    const Eigen::VectorXd shifted = spectra.even.energies.array() - h;
    Eigen::VectorXd occ(shifted.size());
    Eigen::VectorXd vac(shifted.size());
    for (Eigen::Index l = 0; l < shifted.size(); ++l) {
      occ(l) = fermi(beta * shifted(l));
      vac(l) = fermi(-beta * shifted(l));
    }
    return {WeightedG{1.0, occupation_g(spectra.even.modes, occ), spectra.even.modes, occ, vac}};
  }

  struct Term {
    const FermionSpectrum* spectrum;
    bool parity_inserted;
    double coeff;  // +1/2 except the parity-inserted odd-sector trace, which enters with -1/2
  };
  const Term plan[4] = {{&spectra.even, false, 0.5},
                        {&spectra.even, true, 0.5},
                        {&spectra.odd, false, 0.5},
                        {&spectra.odd, true, -0.5}};

  double log_weight[4];
  double sign[4];
  for (int t = 0; t < 4; ++t) {
    const Eigen::VectorXd shifted = plan[t].spectrum->energies.array() - h;
    double lw = 0.0;
    double sg = 1.0;
    for (Eigen::Index l = 0; l < shifted.size(); ++l) {
      const double x = beta * shifted(l);
      if (plan[t].parity_inserted) {
        if (std::expm1(-x) == 0.0) {  // exact zero mode kills the inserted trace
          sg = 0.0;
          break;
        }
        lw += log_zt_factor(x);
        if (x < 0.0) sg = -sg;
      } else {
        lw += log_z_factor(x);
      }
    }
    log_weight[t] = lw;
    sign[t] = sg;
  }

  double log_max = log_weight[0];
  for (int t = 1; t < 4; ++t)
    if (sign[t] != 0.0) log_max = std::max(log_max, log_weight[t]);

  double z[4];
  double total = 0.0;
  for (int t = 0; t < 4; ++t) {
    z[t] = (sign[t] == 0.0) ? 0.0 : sign[t] * std::exp(log_weight[t] - log_max);
    total += plan[t].coeff * z[t];
  }
  if (!(total > 0.0))
    throw std::runtime_error("parity-projected partition function not positive; beta=" +
                             std::to_string(beta));

  std::vector<WeightedG> terms;
  terms.reserve(4);
  for (int t = 0; t < 4; ++t) {
    const double weight = plan[t].coeff * z[t] / total;
    if (weight == 0.0) continue;
    const Eigen::VectorXd shifted = plan[t].spectrum->energies.array() - h;
    Eigen::VectorXd occ(shifted.size());
    Eigen::VectorXd vac(shifted.size());
    for (Eigen::Index l = 0; l < shifted.size(); ++l) {
      const double x = beta * shifted(l);
      occ(l) = plan[t].parity_inserted ? parity_weighted_occupation(x) : fermi(x);
      vac(l) = plan[t].parity_inserted ? parity_weighted_vacancy(x) : fermi(-x);
    }
    terms.push_back(WeightedG{weight, occupation_g(plan[t].spectrum->modes, occ),
                              plan[t].spectrum->modes, occ, vac});
  }
  return terms;
}

std::vector<WeightedG> ground_state_terms(const ChainSpec& chain, const FieldSample& field) {
  if (chain.temperature != 0.0)
    throw std::invalid_argument("ground_state_terms requires temperature = 0");
  const SampleSpectra spectra = field_spectra(chain, field);
  const SectorChoice choice = select_sector(spectra, chain.uniform_field);
  const FermionSpectrum& s =
      (choice.sector == ParitySector::even) ? spectra.even : spectra.odd;
  Eigen::VectorXd occ = Eigen::VectorXd::Zero(s.energies.size());
  occ.head(choice.n_filled).setOnes();
  Eigen::VectorXd vac = Eigen::VectorXd::Ones(s.energies.size());
  vac.head(choice.n_filled).setZero();
  return {WeightedG{1.0, occupation_g(s.modes, occ), s.modes, occ, vac}};
}

}  // namespace xychain
