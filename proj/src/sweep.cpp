// sweep.cpp - sweep orchestration, disorder averaging, CSV output
#include "xychain/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "xychain/correlators.hpp"
#include "xychain/entangle.hpp"
#include "xychain/fermion.hpp"
#include "xychain/version.hpp"

namespace xychain {

namespace {

double pairwise_sum(const double* values, long n) {
  if (n <= 8) {
    double sum = 0.0;
    for (long k = 0; k < n; ++k) sum += values[k];
    return sum;
  }
  const long half = n / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, n - half);
}

// In-place LU determinant with partial pivoting; m is row-major n x n, n <= r_max.
double det_small(double* m, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(m[row * n + col]) > std::abs(m[pivot * n + col])) pivot = row;
    if (pivot != col) {
      for (int k = 0; k < n; ++k) std::swap(m[col * n + k], m[pivot * n + k]);
      det = -det;
    }
    const double p = m[col * n + col];
    if (p == 0.0) return 0.0;
    det *= p;
    for (int row = col + 1; row < n; ++row) {
      const double f = m[row * n + col] / p;
      for (int k = col + 1; k < n; ++k) m[row * n + k] -= f * m[col * n + k];
    }
  }
  return det;
}

template <class Work>
void parallel_over_samples(long n_samples, int n_threads, Work&& work) {
  n_threads = static_cast<int>(std::clamp<long>(n_threads, 1, n_samples));
  if (n_threads <= 1) {
    for (long s = 0; s < n_samples; ++s) work(s);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const long s = next.fetch_add(1);
        if (s >= n_samples) return;
        try {
          work(s);
        } catch (...) {
          std::scoped_lock lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Near-diagonal strip of the contraction sums sum_l V_il V_jl over a mode subset,
// grown mode by mode. The particle strip accumulates occupied modes as the field
// threshold h ascends the grid; the hole strip accumulates empty modes in a
// descending pass. Keeping the two strips separate lets the nearly polarized
// corner entries be formed from same-sign sums instead of 1-minus cancellations.
class ContractionBand {
 public:
  ContractionBand(int n, int r_max) : r_max_(r_max), band_(Eigen::MatrixXd::Zero(n, r_max + 1)) {}

  void add_mode(const Eigen::MatrixXd& modes, int mode) {
    const int n = static_cast<int>(band_.rows());
    const auto v = modes.col(mode);
    for (int l = 0; l < n; ++l) {
      const int lim = std::min(r_max_, n - 1 - l);
      for (int d = 0; d <= lim; ++d) band_(l, d) += v(l) * v(l + d);
    }
  }

  double at(int p, int q) const { return p <= q ? band_(p, q - p) : band_(q, p - q); }

 private:
  int r_max_;
  Eigen::MatrixXd band_;
};

// Particle and hole strips of one parity sector at one grid point.
struct SectorBands {
  const ContractionBand* particle;
  const ContractionBand* hole;
};

double band_concurrence(const SectorBands& bands, int i, int r, double* scratch) {
  const int j = i + r;
  const auto& w = *bands.particle;
  const auto& h = *bands.hole;
  // G_{pq} = 2 w_{pq} - delta_{pq}
  double sxsx;
  if (r == 1) {
    sxsx = 2.0 * w.at(i, i + 1);
  } else {
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const int p = i + a;
        const int q = i + b + 1;
        scratch[a * r + b] = (p == q) ? w.at(p, p) - h.at(p, p) : 2.0 * w.at(p, q);
      }
    sxsx = det_small(scratch, r);
  }
  const double sz_i = w.at(i, i) - h.at(i, i);
  const double sz_j = w.at(j, j) - h.at(j, j);
  const double gij = 2.0 * w.at(i, j);
  const double szsz = sz_i * sz_j - gij * gij;
  const double rho_uu = w.at(i, i) * w.at(j, j) - w.at(i, j) * w.at(i, j);
  const double rho_dd = h.at(i, i) * h.at(j, j) - h.at(i, j) * h.at(i, j);
  return concurrence(clamped_two_site_state(i, j, sz_i, sz_j, sxsx, szsz, rho_uu, rho_dd));
}

// Hole strips for every grid point of one sector, built in one descending pass
// (a mode is empty at h iff its energy is >= h - tol).
std::vector<ContractionBand> hole_snapshots(const FermionSpectrum& spectrum,
                                            const std::vector<double>& h_grid, int r_max) {
  const int n = static_cast<int>(spectrum.energies.size());
  std::vector<ContractionBand> snapshots(h_grid.size(), ContractionBand(n, r_max));
  ContractionBand current(n, r_max);
  int mode = n - 1;
  for (long ih = static_cast<long>(h_grid.size()) - 1; ih >= 0; --ih) {
    while (mode >= 0 && spectrum.energies(mode) >= h_grid[ih] - 1e-12) {
      current.add_mode(spectrum.modes, mode);
      --mode;
    }
    snapshots[ih] = current;
  }
  return snapshots;
}

SweepResult closed_form_sweep(const ChainSpec& chain, const SweepSpec& sweep, Regime regime) {
  validate(chain);
  validate(sweep, chain);
  SweepResult result;
  result.n_sites = chain.n_sites;
  result.rows.reserve(sweep.h_grid.size() * sweep.r_max);
  for (double h : sweep.h_grid) {
    const GMatrix g = (regime == Regime::uniform_zero_t)
                          ? uniform_g_matrix(h, chain.coupling, sweep.r_max)
                          : thermal_g_matrix(h, chain.coupling, chain.temperature, sweep.r_max);
    for (int r = 1; r <= sweep.r_max; ++r) {
      SweepRow row;
      row.regime = regime;
      row.k_t = (regime == Regime::uniform_finite_t) ? chain.temperature : 0.0;
      row.h = h;
      row.r = r;
      row.mean_concurrence = concurrence(two_site_state(g, 0, r));
      result.rows.push_back(row);
    }
  }
  return result;
}

}  // namespace

SweepResult run_uniform_zero_t(const ChainSpec& chain, const SweepSpec& sweep) {
  if (sweep.regime != Regime::uniform_zero_t)
    throw std::invalid_argument("run_uniform_zero_t called with wrong regime");
  if (chain.temperature != 0.0)
    throw std::invalid_argument("run_uniform_zero_t requires temperature = 0");
  return closed_form_sweep(chain, sweep, Regime::uniform_zero_t);
}

SweepResult run_uniform_finite_t(const ChainSpec& chain, const SweepSpec& sweep) {
  if (sweep.regime != Regime::uniform_finite_t)
    throw std::invalid_argument("run_uniform_finite_t called with wrong regime");
  if (!(chain.temperature > 0.0))
    throw std::invalid_argument("run_uniform_finite_t requires temperature > 0");
  return closed_form_sweep(chain, sweep, Regime::uniform_finite_t);
}

SweepResult run_random_zero_t(const ChainSpec& chain, const DisorderSpec& disorder,
                              const SweepSpec& sweep, int n_threads) {
  if (sweep.regime != Regime::random_zero_t)
    throw std::invalid_argument("run_random_zero_t called with wrong regime");
  validate(chain);
  validate(disorder);
  validate(sweep, chain);
  if (chain.temperature != 0.0)
    throw std::invalid_argument("run_random_zero_t requires temperature = 0");

  const int n = chain.n_sites;
  const int n_r = sweep.r_max;
  const long n_h = static_cast<long>(sweep.h_grid.size());
  // a = 0 is a degenerate ensemble: every sample is the same uniform-field chain.
  const long n_samples = (disorder.scale_a == 0.0) ? 1 : disorder.n_samples;

  std::vector<double> sample_means(static_cast<std::size_t>(n_samples) * n_h * n_r);
  std::vector<long> fallback_count(static_cast<std::size_t>(n_samples), 0);

  parallel_over_samples(n_samples, n_threads, [&](long s) {
    const bool periodic = (chain.boundary == Boundary::periodic);
    const FieldSample field = sample_field(disorder, n, static_cast<std::uint64_t>(s));
    const SampleSpectra spectra = field_spectra(chain, field);

    const auto even_holes = hole_snapshots(spectra.even, sweep.h_grid, n_r);
    const auto odd_holes =
        periodic ? hole_snapshots(spectra.odd, sweep.h_grid, n_r) : std::vector<ContractionBand>{};
    ContractionBand even_particles(n, n_r);
    ContractionBand odd_particles(n, n_r);
    int even_mode = 0;
    int odd_mode = 0;

    std::vector<double> scratch(static_cast<std::size_t>(n_r) * n_r);
    long fallbacks = 0;
    for (long ih = 0; ih < n_h; ++ih) {
      const double h = sweep.h_grid[ih];
      while (even_mode < n && spectra.even.energies(even_mode) < h - 1e-12)
        even_particles.add_mode(spectra.even.modes, even_mode++);
      if (periodic)
        while (odd_mode < n && spectra.odd.energies(odd_mode) < h - 1e-12)
          odd_particles.add_mode(spectra.odd.modes, odd_mode++);

      const SectorChoice choice = select_sector(spectra, h);
      if (choice.fallback) ++fallbacks;
      const bool even_sector = (choice.sector == ParitySector::even) || !periodic;
      const SectorBands bands{even_sector ? &even_particles : &odd_particles,
                              even_sector ? &even_holes[ih] : &odd_holes[ih]};
      for (int r = 1; r <= n_r; ++r) {
        double total = 0.0;
        for (int i = 0; i + r < n; ++i) total += band_concurrence(bands, i, r, scratch.data());
        sample_means[(static_cast<std::size_t>(s) * n_h + ih) * n_r + (r - 1)] =
            total / (n - r);
      }
    }
    fallback_count[s] = fallbacks;
  });

  SweepResult result;
  result.master_seed = disorder.master_seed;
  result.n_sites = n;
  for (long c : fallback_count) result.parity_fallbacks += c;
  result.rows.reserve(n_h * n_r);

  std::vector<double> column(n_samples);
  for (long ih = 0; ih < n_h; ++ih) {
    for (int r = 1; r <= n_r; ++r) {
      for (long s = 0; s < n_samples; ++s)
        column[s] = sample_means[(static_cast<std::size_t>(s) * n_h + ih) * n_r + (r - 1)];
      const double mean = pairwise_sum(column.data(), n_samples) / n_samples;
      double std_error = 0.0;
      if (n_samples > 1) {
        std::vector<double> sq(n_samples);
        for (long s = 0; s < n_samples; ++s) sq[s] = (column[s] - mean) * (column[s] - mean);
        const double var = pairwise_sum(sq.data(), n_samples) / (n_samples - 1);
        std_error = std::sqrt(var / n_samples);
      }
      SweepRow row;
      row.regime = Regime::random_zero_t;
      row.q = disorder.q;
      row.a = disorder.scale_a;
      row.h = sweep.h_grid[ih];
      row.r = r;
      row.mean_concurrence = mean;
      row.std_error = std_error;
      row.n_samples = n_samples;
      row.n_pairs = n - r;
      result.rows.push_back(row);
    }
  }
  return result;
}

std::vector<MaxTraceRow> max_concurrence_trace(std::span<const SweepResult> family) {
  if (family.empty()) throw std::invalid_argument("max_concurrence_trace: empty family");

  auto key_of = [](const SweepResult& res) {
    std::vector<std::pair<double, int>> key;
    key.reserve(res.rows.size());
    for (const SweepRow& row : res.rows) key.emplace_back(row.h, row.r);
    return key;
  };
  const auto reference = key_of(family.front());

  Regime family_regime = Regime::uniform_zero_t;
  double family_q = 0.0;
  for (const SweepResult& res : family) {
    if (key_of(res) != reference)
      throw std::invalid_argument("max_concurrence_trace: inconsistent (h, r) grids");
    for (const SweepRow& row : res.rows) {
      if (row.regime == Regime::uniform_zero_t) continue;  // control = 0 entry, fits either family
      if (family_regime == Regime::uniform_zero_t) {
        family_regime = row.regime;
        family_q = row.q;
      }
      if (row.regime != family_regime)
        throw std::invalid_argument("max_concurrence_trace: mixed regimes in family");
      if (row.regime == Regime::random_zero_t && row.q != family_q)
        throw std::invalid_argument("max_concurrence_trace: mixed q values in family");
    }
  }

  std::vector<MaxTraceRow> table;
  for (const SweepResult& res : family) {
    const Regime regime = res.rows.front().regime;
    const double control = (regime == Regime::random_zero_t) ? res.rows.front().a
                           : (regime == Regime::uniform_finite_t) ? res.rows.front().k_t
                                                                  : 0.0;
    std::vector<int> r_values;
    for (const SweepRow& row : res.rows)
      if (std::find(r_values.begin(), r_values.end(), row.r) == r_values.end())
        r_values.push_back(row.r);
    for (int r : r_values) {
      MaxTraceRow out{control, r, -1.0, 0.0};
      for (const SweepRow& row : res.rows) {
        if (row.r != r) continue;
        if (row.mean_concurrence > out.max_concurrence) {
          out.max_concurrence = row.mean_concurrence;
          out.argmax_h = row.h;
        }
      }
      table.push_back(out);
    }
  }
  return table;
}

namespace {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace

void emit_csv(const SweepResult& result, std::ostream& out) {
  out << "# xychain concurrence sweep\n";
  out << "# version=" << kVersionTag << " seed=" << result.master_seed
      << " n_sites=" << result.n_sites << " parity_fallbacks=" << result.parity_fallbacks
      << "\n";
  out << "regime,q,a,kt,h,r,mean_concurrence,std_error,n_samples,n_pairs\n";
  for (const SweepRow& row : result.rows) {
    out << to_string(row.regime) << ',' << format_double(row.q) << ',' << format_double(row.a)
        << ',' << format_double(row.k_t) << ',' << format_double(row.h) << ',' << row.r << ','
        << format_double(row.mean_concurrence) << ',' << format_double(row.std_error) << ','
        << row.n_samples << ',' << row.n_pairs << '\n';
  }
}

namespace {

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Plot a concurrence sweep CSV: mean vs h, one curve per (r, a, kt) combination."""
import csv
import sys
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "%CSV%"
curves = defaultdict(list)
with open(path) as fh:
    rows = csv.DictReader(line for line in fh if not line.startswith("#"))
    for row in rows:
        key = (int(row["r"]), row["a"], row["kt"])
        curves[key].append((float(row["h"]), float(row["mean_concurrence"]),
                            float(row["std_error"])))

fig, ax = plt.subplots(figsize=(6, 4))
for (r, a, kt), points in sorted(curves.items()):
    points.sort()
    hs = [p[0] for p in points]
    means = [p[1] for p in points]
    errs = [p[2] for p in points]
    label = f"r={r}"
    if float(a) != 0:
        label += f", a={a}"
    if float(kt) != 0:
        label += f", kT={kt}"
    ax.errorbar(hs, means, yerr=errs, marker="o", markersize=3, capsize=2, label=label)
ax.set_xlabel("h")
ax.set_ylabel("C(r)")
ax.legend()
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=160)
print(out)
)PY";

}  // namespace

void emit(const SweepResult& result, const std::filesystem::path& path, bool emit_plot_script) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  emit_csv(result, out);
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path.string());

  if (emit_plot_script) {
    std::filesystem::path script = path;
    script.replace_extension();
    script += "_plot.py";
    std::ofstream py(script, std::ios::binary);
    if (!py) throw std::runtime_error("cannot open plot script: " + script.string());
    std::string body = kPlotScript;
    const std::string placeholder = "%CSV%";
    body.replace(body.find(placeholder), placeholder.size(), path.filename().string());
    py << body;
    if (!py) throw std::runtime_error("write failed: " + script.string());
  }
}

}  // namespace xychain
