// model.hpp - domain types and validation for the chain, disorder ensemble and sweeps
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace xychain {

enum class Boundary { periodic, open };
enum class Regime { uniform_zero_t, uniform_finite_t, random_zero_t };

// Convention for the width parameter of the q=1 (Gaussian) limit of the field
// distribution: `literal` keeps the density exp(-h^2/a^2) (sigma = a/sqrt(2)),
// `prose` rescales the q=1 case so that sigma = a.
enum class SigmaConvention { literal, prose };

struct ChainSpec {
  int n_sites = 500;
  double coupling = 1.0;       // J > 0, energy unit
  double uniform_field = 0.0;  // h, in units of J
  double temperature = 0.0;    // kT, in units of J; 0 selects the ground state
  Boundary boundary = Boundary::periodic;
};

struct DisorderSpec {
  double q = 1.0;          // shape of the field distribution, 1 <= q < 3
  double scale_a = 0.0;    // width parameter a >= 0; 0 degenerates to the uniform model
  long n_samples = 1;
  std::uint64_t master_seed = 0;
  SigmaConvention sigma_convention = SigmaConvention::literal;
};

struct SweepSpec {
  std::vector<double> h_grid;  // strictly increasing, nonempty
  int r_max = 5;               // largest pair separation, < n_sites/2
  Regime regime = Regime::uniform_zero_t;
};

struct Config {
  ChainSpec chain;
  DisorderSpec disorder;
  SweepSpec sweep;
};

// Each check throws std::invalid_argument naming the violated invariant.
void validate(const ChainSpec& chain);
void validate(const DisorderSpec& disorder);
void validate(const SweepSpec& sweep, const ChainSpec& chain);
void validate(const Config& config);

const char* to_string(Boundary b);
const char* to_string(Regime r);
const char* to_string(SigmaConvention c);
Boundary boundary_from_string(const std::string& s);
Regime regime_from_string(const std::string& s);
SigmaConvention sigma_convention_from_string(const std::string& s);

}  // namespace xychain
