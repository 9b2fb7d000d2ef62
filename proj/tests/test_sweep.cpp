// test_sweep.cpp - sweep pipelines, determinism, emission
#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "xychain/correlators.hpp"
#include "xychain/entangle.hpp"
#include "xychain/sweep.hpp"

using namespace xychain;

namespace {

const SweepRow& find_row(const SweepResult& result, double h, int r) {
  for (const SweepRow& row : result.rows)
    if (row.r == r && std::abs(row.h - h) < 1e-12) return row;
  throw std::logic_error("row not found");
}

}  // namespace

TEST_SUITE_BEGIN("sweep");

TEST_CASE("uniform T=0 sweep reproduces closed-form values") {
  ChainSpec chain;
  SweepSpec sweep;
  sweep.regime = Regime::uniform_zero_t;
  sweep.h_grid = {0.0, 0.8, 1.05, 2.0, 3.0};
  sweep.r_max = 5;
  const SweepResult result = run_uniform_zero_t(chain, sweep);
  REQUIRE(result.rows.size() == 25);

  CHECK(find_row(result, 0.0, 1).mean_concurrence == doctest::Approx(0.33926).epsilon(1e-4));
  for (double h : {1.05, 2.0, 3.0})
    for (int r = 1; r <= 5; ++r) CHECK(find_row(result, h, r).mean_concurrence == 0.0);

  // r = 3 value equals the direct evaluation through the closed-form G window
  const GMatrix g = uniform_g_matrix(0.0, 1.0, 5);
  CHECK(find_row(result, 0.0, 3).mean_concurrence ==
        doctest::Approx(concurrence(two_site_state(g, 0, 3))).epsilon(1e-14));

  for (const SweepRow& row : result.rows) {
    CHECK(row.std_error == 0.0);
    CHECK(row.n_pairs == 1);
    CHECK(row.mean_concurrence >= 0.0);
    CHECK(row.mean_concurrence <= 1.0);
  }

  // separation ordering at h = 0
  CHECK(find_row(result, 0.0, 1).mean_concurrence >= find_row(result, 0.0, 2).mean_concurrence);
  CHECK(find_row(result, 0.0, 2).mean_concurrence >= find_row(result, 0.0, 3).mean_concurrence);
}

TEST_CASE("thermal sweep: region dependence and hot limit") {
  ChainSpec chain;
  chain.temperature = 0.05;
  SweepSpec sweep;
  sweep.regime = Regime::uniform_finite_t;
  sweep.h_grid = {0.3, 1.1};
  sweep.r_max = 2;
  const SweepResult result = run_uniform_finite_t(chain, sweep);
  CHECK(find_row(result, 0.3, 2).mean_concurrence < 1e-6);
  CHECK(find_row(result, 1.1, 1).mean_concurrence > 0.0);

  chain.temperature = 1e9;
  const SweepResult hot = run_uniform_finite_t(chain, sweep);
  for (const SweepRow& row : hot.rows) CHECK(row.mean_concurrence < 1e-8);
}

TEST_CASE("a=0 random sweep collapses to the deterministic finite-chain pipeline") {
  ChainSpec chain;
  chain.n_sites = 40;
  DisorderSpec disorder;
  disorder.q = 2.0;
  disorder.scale_a = 0.0;
  disorder.n_samples = 50;
  disorder.master_seed = 9;
  SweepSpec sweep;
  sweep.regime = Regime::random_zero_t;
  sweep.h_grid = {0.0, 0.4, 0.8, 1.2};
  sweep.r_max = 3;

  const SweepResult result = run_random_zero_t(chain, disorder, sweep, 2);

  FieldSample zero;
  zero.values.assign(chain.n_sites, 0.0);
  for (const SweepRow& row : result.rows) {
    CHECK(row.std_error == 0.0);
    CHECK(row.n_samples == 1);
    CHECK(row.n_pairs == chain.n_sites - row.r);
    ChainSpec at_h = chain;
    at_h.uniform_field = row.h;
    const GMatrix g = ground_state_g_matrix(at_h, zero);
    double reference = 0.0;
    for (int i = 0; i + row.r < chain.n_sites; ++i)
      reference += concurrence(two_site_state(g, i, i + row.r));
    reference /= (chain.n_sites - row.r);
    CHECK(row.mean_concurrence == doctest::Approx(reference).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("random sweep is reproducible and thread-count independent") {
  ChainSpec chain;
  chain.n_sites = 24;
  DisorderSpec disorder;
  disorder.q = 2.0;
  disorder.scale_a = 0.4;
  disorder.n_samples = 60;
  disorder.master_seed = 123;
  SweepSpec sweep;
  sweep.regime = Regime::random_zero_t;
  sweep.h_grid = {0.2, 0.6, 1.0};
  sweep.r_max = 3;

  const SweepResult serial = run_random_zero_t(chain, disorder, sweep, 1);
  const SweepResult threaded = run_random_zero_t(chain, disorder, sweep, 4);
  REQUIRE(serial.rows.size() == threaded.rows.size());
  for (std::size_t k = 0; k < serial.rows.size(); ++k) {
    CHECK(serial.rows[k].mean_concurrence == threaded.rows[k].mean_concurrence);
    CHECK(serial.rows[k].std_error == threaded.rows[k].std_error);
  }

  std::ostringstream once, twice;
  emit_csv(serial, once);
  emit_csv(threaded, twice);
  CHECK(once.str() == twice.str());  // byte-identical
  CHECK(serial.rows.front().std_error > 0.0);
}

TEST_CASE("csv layout and file emission") {
  ChainSpec chain;
  SweepSpec sweep;
  sweep.regime = Regime::uniform_zero_t;
  sweep.h_grid = {0.0, 0.5};
  sweep.r_max = 2;
  const SweepResult result = run_uniform_zero_t(chain, sweep);

  std::ostringstream out;
  emit_csv(result, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("#", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("#", 0) == 0);
  CHECK(line.find("seed=") != std::string::npos);
  CHECK(line.find("n_sites=") != std::string::npos);
  std::getline(in, line);
  CHECK(line == "regime,q,a,kt,h,r,mean_concurrence,std_error,n_samples,n_pairs");
  int data_lines = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++data_lines;
  CHECK(data_lines == 4);

  const auto dir = std::filesystem::temp_directory_path() / "xychain_test_emit";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "sweep.csv";
  emit(result, csv, /*emit_plot_script=*/true);
  CHECK(std::filesystem::exists(csv));
  CHECK(std::filesystem::exists(dir / "sweep_plot.py"));
  std::ifstream back(csv, std::ios::binary);
  std::stringstream content;
  content << back.rdbuf();
  CHECK(content.str() == out.str());
  std::filesystem::remove_all(dir);
}

TEST_CASE("maximum trace over a control grid") {
  ChainSpec chain;
  chain.n_sites = 24;
  DisorderSpec disorder;
  disorder.q = 1.0;
  disorder.n_samples = 40;
  disorder.master_seed = 5;
  SweepSpec sweep;
  sweep.regime = Regime::random_zero_t;
  sweep.h_grid = {0.2, 0.5, 0.8, 1.1};
  sweep.r_max = 2;

  std::vector<SweepResult> family;
  for (double a : {0.0, 0.6}) {
    DisorderSpec d = disorder;
    d.scale_a = a;
    family.push_back(run_random_zero_t(chain, d, sweep, 2));
  }

  const auto table = max_concurrence_trace(family);
  REQUIRE(table.size() == 4);  // 2 controls x 2 separations

  // degenerate control entry equals the pure-case grid maximum
  double best = 0.0, best_h = 0.0;
  for (const SweepRow& row : family[0].rows)
    if (row.r == 1 && row.mean_concurrence > best) {
      best = row.mean_concurrence;
      best_h = row.h;
    }
  CHECK(table[0].control == 0.0);
  CHECK(table[0].r == 1);
  CHECK(table[0].max_concurrence == best);
  CHECK(table[0].argmax_h == best_h);

  // inconsistent grids are rejected
  SweepSpec other = sweep;
  other.h_grid = {0.2, 0.5};
  family.push_back(run_random_zero_t(chain, disorder, other, 1));
  CHECK_THROWS_AS(max_concurrence_trace(family), std::invalid_argument);
}

TEST_CASE("error-bar sanity on a small disordered ensemble") {
  ChainSpec chain;
  chain.n_sites = 32;
  DisorderSpec disorder;
  disorder.q = 2.0;
  disorder.scale_a = 0.3;
  disorder.n_samples = 150;
  disorder.master_seed = 77;
  SweepSpec sweep;
  sweep.regime = Regime::random_zero_t;
  sweep.h_grid = {0.7};
  sweep.r_max = 2;
  const SweepResult result = run_random_zero_t(chain, disorder, sweep, 2);
  const SweepRow& row = find_row(result, 0.7, 2);
  CHECK(row.mean_concurrence > 0.0);
  CHECK(row.std_error > 0.0);
  CHECK(row.std_error < row.mean_concurrence);  // bars small compared to the signal
}

TEST_SUITE_END();
