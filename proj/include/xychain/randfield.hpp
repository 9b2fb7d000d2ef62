// randfield.hpp - reproducible i.i.d. sampling of the random on-site fields
#pragma once

#include <cstdint>
#include <vector>

#include "xychain/model.hpp"

namespace xychain {

struct FieldSample {
  std::vector<double> values;       // h_j per site, units of J
  std::uint64_t sample_index = 0;
  std::uint64_t seed = 0;           // substream seed actually used
};

// One disorder realization. The substream is a pure function of
// (master_seed, sample_index): regenerating reproduces values bit-exactly and
// samples may be drawn in any order or concurrently.
FieldSample sample_field(const DisorderSpec& disorder, int n_sites, std::uint64_t sample_index);

// Analytic variance of the field distribution: a^2/(5-3q) for q < 5/3 under the
// literal width convention (a^2 when q = 1 under the prose convention), +inf for
// q >= 5/3 where the second moment diverges.
double distribution_variance(double q, double a,
                             SigmaConvention convention = SigmaConvention::literal);

// Zero-mean symmetric deviate whose density follows the q-parameterized family:
// Gaussian at q = 1, Student-t with nu = (3-q)/(q-1) degrees of freedom scaled by
// 1/sqrt(3-q) for 1 < q < 3 (Lorentzian at q = 2). Unit width parameter a = 1.
// Exposed for statistical tests; sample_field draws through this.
class QGaussianDeviate {
 public:
  QGaussianDeviate(double q, SigmaConvention convention);
  // Consumes uniforms from `next_u01` (callable returning doubles in [0,1)).
  template <class Rng>
  double operator()(Rng& next_u01) const;

  double scale() const { return scale_; }

 private:
  double nu_ = 0.0;     // degrees of freedom; 0 flags the exact Gaussian branch
  double scale_ = 1.0;  // multiplies the raw Student-t / normal deviate
};

namespace detail {
double bailey_polar(double nu, double u, double v, double w);
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t sample_index);
}  // namespace detail

template <class Rng>
double QGaussianDeviate::operator()(Rng& next_u01) const {
  // Polar rejection: (u,v) uniform on the unit disk, w = u^2 + v^2.
  for (;;) {
    const double u = 2.0 * next_u01() - 1.0;
    const double v = 2.0 * next_u01() - 1.0;
    const double w = u * u + v * v;
    if (w > 1.0 || w == 0.0) continue;
    return scale_ * detail::bailey_polar(nu_, u, v, w);
  }
}

}  // namespace xychain
