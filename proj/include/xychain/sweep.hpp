// sweep.hpp - h-grid sweeps with spatial and disorder averaging; CSV emission
#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "xychain/model.hpp"

namespace xychain {

struct SweepRow {
  Regime regime = Regime::uniform_zero_t;
  double q = 1.0;
  double a = 0.0;
  double k_t = 0.0;
  double h = 0.0;
  int r = 1;
  double mean_concurrence = 0.0;
  double std_error = 0.0;
  long n_samples = 1;
  long n_pairs = 1;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // grid order: h outer, r inner
  std::uint64_t master_seed = 0;
  int n_sites = 0;
  long parity_fallbacks = 0;  // samples where neither parity sector was self-consistent
};

// Uniform field, T = 0, thermodynamic limit: deterministic closed-form pipeline;
// translation invariance makes spatial averaging unnecessary.
SweepResult run_uniform_zero_t(const ChainSpec& chain, const SweepSpec& sweep);

// Uniform field at chain.temperature > 0, thermodynamic limit.
SweepResult run_uniform_finite_t(const ChainSpec& chain, const SweepSpec& sweep);

// Random field at T = 0 on the finite chain. Per sample: one factorization per
// parity sector, then every h on the grid reuses the modes (a uniform field only
// shifts the levels). The per-sample spatial mean over non-wrapping pairs
// i = 1..N-r is the random variable; std_error is the standard error of those
// sample means. Reduction is keyed by sample_index, so results are identical for
// any worker count. a = 0 degenerates to a single deterministic sample.
SweepResult run_random_zero_t(const ChainSpec& chain, const DisorderSpec& disorder,
                              const SweepSpec& sweep, int n_threads = 1);

struct MaxTraceRow {
  double control = 0.0;  // scale parameter a (random family) or kT (thermal family)
  int r = 1;
  double max_concurrence = 0.0;
  double argmax_h = 0.0;  // grid argmax, no interpolation
};

// Per control value, the grid maximum over h of the mean concurrence, for each r.
// All results must share the h grid and r set; regimes must form one family
// (uniform_zero_t is admitted in either family as the control = 0 entry).
std::vector<MaxTraceRow> max_concurrence_trace(std::span<const SweepResult> family);

void emit_csv(const SweepResult& result, std::ostream& out);

// Writes the CSV (and optionally a plotting script next to it that consumes only
// the CSV). Identical results produce byte-identical files.
void emit(const SweepResult& result, const std::filesystem::path& path,
          bool emit_plot_script = false);

}  // namespace xychain
