// randfield.cpp - q-parameterized field sampler with splittable substreams
#include "xychain/randfield.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace xychain {

namespace detail {

// SplitMix64 mix; decorrelates consecutive sample indices into independent seeds.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t sample_index) {
  std::uint64_t z = master_seed + (sample_index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Bailey's polar method: exact Student-t(nu) from a point (u,v) in the unit disk,
// with the Marsaglia polar normal as the nu -> inf (Gaussian) branch at nu = 0.
double bailey_polar(double nu, double u, double v, double w) {
  (void)v;
  if (nu == 0.0) return u * std::sqrt(-2.0 * std::log(w) / w);
  const double r = nu * std::expm1(-2.0 / nu * std::log(w));
  return u * std::sqrt(r / w);
}

}  // namespace detail

QGaussianDeviate::QGaussianDeviate(double q, SigmaConvention convention) {
  if (q == 1.0) {
    nu_ = 0.0;  // exact Gaussian branch
    scale_ = (convention == SigmaConvention::prose) ? 1.0 : 1.0 / std::sqrt(2.0);
  } else {
    nu_ = (3.0 - q) / (q - 1.0);
    scale_ = 1.0 / std::sqrt(3.0 - q);
  }
}

FieldSample sample_field(const DisorderSpec& disorder, int n_sites, std::uint64_t sample_index) {
  if (sample_index >= static_cast<std::uint64_t>(disorder.n_samples))
    throw std::out_of_range("sample_index " + std::to_string(sample_index) +
                            " >= n_samples " + std::to_string(disorder.n_samples));

  FieldSample sample;
  sample.sample_index = sample_index;
  sample.seed = detail::substream_seed(disorder.master_seed, sample_index);
  sample.values.resize(static_cast<std::size_t>(n_sites));

  std::mt19937_64 engine(sample.seed);
  auto next_u01 = [&engine]() { return (engine() >> 11) * 0x1.0p-53; };

  const QGaussianDeviate deviate(disorder.q, disorder.sigma_convention);
  const double a = disorder.scale_a;
  for (double& h : sample.values) h = a * deviate(next_u01);
  return sample;
}

double distribution_variance(double q, double a, SigmaConvention convention) {
  if (a == 0.0) return 0.0;
  if (q >= 5.0 / 3.0) return std::numeric_limits<double>::infinity();
  if (q == 1.0 && convention == SigmaConvention::prose) return a * a;
  return a * a / (5.0 - 3.0 * q);
}

}  // namespace xychain
