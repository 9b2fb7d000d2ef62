// model.cpp - configuration validation
#include "xychain/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xychain {

namespace {

[[noreturn]] void reject(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

void validate(const ChainSpec& chain) {
  if (chain.n_sites < 2) reject("chain.n_sites must be >= 2, got " + std::to_string(chain.n_sites));
  if (!(chain.coupling > 0.0))
    reject("chain.coupling must be > 0 (ferromagnetic), got " + std::to_string(chain.coupling));
  if (!(chain.temperature >= 0.0))
    reject("chain.temperature must be >= 0, got " + std::to_string(chain.temperature));
  if (!std::isfinite(chain.uniform_field)) reject("chain.uniform_field must be finite");
}

void validate(const DisorderSpec& disorder) {
  if (!(disorder.q >= 1.0 && disorder.q < 3.0))
    reject("disorder.q out of [1,3), got " + std::to_string(disorder.q));
  if (!(disorder.scale_a >= 0.0) || !std::isfinite(disorder.scale_a))
    reject("disorder.scale_a must be >= 0 and finite, got " + std::to_string(disorder.scale_a));
  if (disorder.n_samples < 1)
    reject("disorder.n_samples must be >= 1, got " + std::to_string(disorder.n_samples));
}

void validate(const SweepSpec& sweep, const ChainSpec& chain) {
  if (sweep.h_grid.empty()) reject("sweep.h_grid must be nonempty");
  for (std::size_t k = 0; k + 1 < sweep.h_grid.size(); ++k) {
    if (!(sweep.h_grid[k] < sweep.h_grid[k + 1])) {
      std::ostringstream msg;
      msg << "sweep.h_grid must be strictly increasing, violated at index " << k;
      reject(msg.str());
    }
  }
  if (sweep.r_max < 1) reject("sweep.r_max must be >= 1, got " + std::to_string(sweep.r_max));
  if (!(sweep.r_max < chain.n_sites / 2)) {
    std::ostringstream msg;
    msg << "sweep.r_max too large: need r_max < n_sites/2, got r_max=" << sweep.r_max
        << " with n_sites=" << chain.n_sites;
    reject(msg.str());
  }
  if (sweep.regime == Regime::uniform_zero_t) {
    for (double h : sweep.h_grid)
      if (std::abs(std::abs(h) - chain.coupling) < 1e-12)
        reject("sweep.h_grid contains the critical point |h| = J, not admitted at T = 0");
  }
  if (sweep.regime == Regime::uniform_finite_t && !(chain.temperature > 0.0))
    reject("regime uniform_finite_t requires chain.temperature > 0");
  if (sweep.regime != Regime::uniform_finite_t && chain.temperature != 0.0)
    reject("zero-temperature regime requires chain.temperature == 0");
}

void validate(const Config& config) {
  validate(config.chain);
  validate(config.disorder);
  validate(config.sweep, config.chain);
}

const char* to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "open"; }

const char* to_string(Regime r) {
  switch (r) {
    case Regime::uniform_zero_t: return "uniform_zero_t";
    case Regime::uniform_finite_t: return "uniform_finite_t";
    case Regime::random_zero_t: return "random_zero_t";
  }
  return "?";
}

const char* to_string(SigmaConvention c) {
  return c == SigmaConvention::literal ? "literal" : "prose";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "open") return Boundary::open;
  reject("unknown boundary '" + s + "' (expected periodic|open)");
}

Regime regime_from_string(const std::string& s) {
  if (s == "uniform_zero_t") return Regime::uniform_zero_t;
  if (s == "uniform_finite_t") return Regime::uniform_finite_t;
  if (s == "random_zero_t") return Regime::random_zero_t;
  reject("unknown regime '" + s + "'");
}

SigmaConvention sigma_convention_from_string(const std::string& s) {
  if (s == "literal") return SigmaConvention::literal;
  if (s == "prose") return SigmaConvention::prose;
  reject("unknown sigma convention '" + s + "' (expected literal|prose)");
}

}  // namespace xychain
