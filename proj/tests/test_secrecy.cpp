// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mamimo/secrecy.hpp"

using namespace mamimo;

TEST_CASE("mrt beamformer") {
  ComplexVector g(2);
  g << Complex(2, 0), Complex(0, 0);
  ComplexVector w = mrt_beamformer(g);
  CHECK(std::abs(w[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(w[1]) < 1e-15);

  g << Complex(0, 0), Complex(0, 2);
  w = mrt_beamformer(g);
  CHECK(std::abs(w[1] - Complex(0, -1)) < 1e-15);
  const Complex gain = g.cwiseProduct(w).sum();
  CHECK(gain.real() == doctest::Approx(2.0));
  CHECK(std::abs(gain.imag()) < 1e-15);

  RngStream rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexVector h = sample_circular_gaussian(rng, 33, 1.0);
    CHECK(std::abs(mrt_beamformer(h).norm() - 1.0) < 1e-12);
  }

  CHECK_THROWS_AS(mrt_beamformer(ComplexVector::Zero(3)), std::invalid_argument);
}

TEST_CASE("instantaneous capacities") {
  ComplexVector g_lu(2), g_ed(2), w(2);
  g_lu << Complex(1, 0), Complex(0, 0);
  g_ed << Complex(0, 0), Complex(1, 0);
  w << Complex(1, 0), Complex(0, 0);

  CapacityTriple caps = instantaneous_capacities(g_lu, g_ed, w, 1.0, 1.0);
  CHECK(caps.c_lu == doctest::Approx(1.0));
  CHECK(caps.c_ed == doctest::Approx(0.0));
  CHECK(caps.c_sc == doctest::Approx(1.0));

  caps = instantaneous_capacities(g_lu, g_ed, w, 0.0, 1.0);
  CHECK(caps.c_lu == 0.0);
  CHECK(caps.c_ed == 0.0);
  CHECK(caps.c_sc == 0.0);

  // identical channels leave no secrecy whatever the beamformer
  RngStream rng(2);
  const ComplexVector g = sample_circular_gaussian(rng, 16, 1.0);
  const ComplexVector wg = mrt_beamformer(g);
  caps = instantaneous_capacities(g, g, wg, 2.0, 0.5);
  CHECK(caps.c_sc == 0.0);
  CHECK(caps.c_lu > 0.0);

  ComplexVector not_unit = w * 2.0;
  CHECK_THROWS_AS(instantaneous_capacities(g_lu, g_ed, not_unit, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(instantaneous_capacities(g_lu, g_ed, w, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("ls estimate recovers the channel") {
  LinkParams params;
  params.m = 24;
  params.p_lu = 2.0;
  params.n0 = 0.0;
  RngStream rng(3);

  SUBCASE("no attack, noiseless") {
    const LinkRealization links = sample_links(params, rng);
    const Complex p = std::polar(1.0, 1.1);
    const TrainingSlot slot =
        receive_training(links.g_lu, links.g_ed, params, p, std::nullopt, rng);
    const ComplexVector est = ls_estimate(slot, params);
    for (Eigen::Index i = 0; i < params.m; ++i) {
      CHECK(std::abs(est[i] - links.g_lu[i]) < 1e-12);
    }
  }

  SUBCASE("equal-power attack with matching pilots superposes the channels") {
    params.p_ed = params.p_lu;
    const LinkRealization links = sample_links(params, rng);
    const Complex p = std::polar(1.0, 0.3);
    const TrainingSlot slot =
        receive_training(links.g_lu, links.g_ed, params, p, p, rng);
    const ComplexVector est = ls_estimate(slot, params);
    for (Eigen::Index i = 0; i < params.m; ++i) {
      CHECK(std::abs(est[i] - (links.g_lu[i] + links.g_ed[i])) < 1e-12);
    }
  }

  SUBCASE("p_lu must be positive") {
    const LinkRealization links = sample_links(params, rng);
    TrainingSlot slot =
        receive_training(links.g_lu, links.g_ed, params, Complex{1, 0},
                         std::nullopt, rng);
    LinkParams zero = params;
    zero.p_lu = 0.0;
    CHECK_THROWS_AS(ls_estimate(slot, zero), std::invalid_argument);
  }
}

TEST_CASE("contaminated estimate power matches beta_lu + (p_ed/p_lu) beta_ed + n0/p_lu") {
  LinkParams params;
  params.m = 64;
  params.p_lu = 1.0;
  params.p_ed = 0.1;
  params.n0 = 0.1;
  RngStream root(4);
  const PskAlphabet qpsk(4);
  double sum = 0.0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    RngStream rng = root.substream(static_cast<std::uint64_t>(t));
    const LinkRealization links = sample_links(params, rng);
    const TrainingSlot slot =
        receive_training(links.g_lu, links.g_ed, params,
                         qpsk.random_symbol(rng), qpsk.random_symbol(rng), rng);
    sum += ls_estimate(slot, params).squaredNorm() / static_cast<double>(params.m);
  }
  CHECK(sum / trials == doctest::Approx(1.2).epsilon(0.02));
}

TEST_CASE("ergodic scenario: passive eavesdropper properties") {
  LinkParams params;
  params.m = 100;
  params.n0 = 1.0;
  ErgodicOptions opts;
  opts.trials = 4000;
  opts.threads = 2;

  const ErgodicCapacities at100 = ergodic_scenario(params, opts, RngStream(5));
  CHECK(at100.c_sc.estimate >= 0.85 * at100.c_lu.estimate);
  CHECK(at100.c_lu.ci_low <= at100.c_lu.estimate);
  CHECK(at100.c_lu.ci_high >= at100.c_lu.estimate);
  // per-realization mean dominates the difference of means
  CHECK(at100.c_sc.estimate >= at100.c_sc_of_means - 1e-12);

  params.m = 16;
  const ErgodicCapacities at16 = ergodic_scenario(params, opts, RngStream(6));
  params.m = 64;
  const ErgodicCapacities at64 = ergodic_scenario(params, opts, RngStream(7));

  // LU capacity grows with M, the ED's stays flat
  CHECK(at16.c_lu.estimate < at64.c_lu.estimate);
  CHECK(at64.c_lu.estimate < at100.c_lu.estimate);
  const double ed_mean =
      (at16.c_ed.estimate + at64.c_ed.estimate + at100.c_ed.estimate) / 3.0;
  CHECK(std::abs(at16.c_ed.estimate - ed_mean) < 0.1 * ed_mean);
  CHECK(std::abs(at64.c_ed.estimate - ed_mean) < 0.1 * ed_mean);
  CHECK(std::abs(at100.c_ed.estimate - ed_mean) < 0.1 * ed_mean);
}

TEST_CASE("ergodic scenario: MRT array gain") {
  LinkParams params;
  params.m = 128;
  params.n0 = 1.0;
  RngStream root(8);
  double gain_sum = 0.0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    RngStream rng = root.substream(static_cast<std::uint64_t>(t));
    const LinkRealization links = sample_links(params, rng);
    const ComplexVector w = mrt_beamformer(links.g_lu);
    gain_sum += std::norm(links.g_lu.cwiseProduct(w).sum());
  }
  CHECK(gain_sum / trials ==
        doctest::Approx(static_cast<double>(params.m)).epsilon(0.02));
}

TEST_CASE("ergodic scenario: active attack raises the ED curve with M") {
  LinkParams params;
  params.m = 16;
  params.n0 = 1.0;
  params.p_lu = 1.0;
  params.p_ed = 0.1;
  ErgodicOptions opts;
  opts.trials = 4000;
  opts.attack = true;
  opts.perfect_csi = false;
  opts.threads = 2;

  const ErgodicCapacities at16 = ergodic_scenario(params, opts, RngStream(9));
  params.m = 64;
  const ErgodicCapacities at64 = ergodic_scenario(params, opts, RngStream(10));
  params.m = 256;
  const ErgodicCapacities at256 = ergodic_scenario(params, opts, RngStream(11));

  CHECK(at16.c_ed.estimate < at64.c_ed.estimate);
  CHECK(at64.c_ed.estimate < at256.c_ed.estimate);
  CHECK(at16.c_lu.estimate < at64.c_lu.estimate);
  CHECK(at64.c_lu.estimate < at256.c_lu.estimate);
}

TEST_CASE("ergodic scenario is deterministic and thread-count independent") {
  LinkParams params;
  params.m = 32;
  params.n0 = 1.0;
  ErgodicOptions opts;
  opts.trials = 1500;
  opts.threads = 1;
  const ErgodicCapacities a = ergodic_scenario(params, opts, RngStream(12));
  opts.threads = 3;
  const ErgodicCapacities b = ergodic_scenario(params, opts, RngStream(12));
  CHECK(a.c_lu.estimate == b.c_lu.estimate);
  CHECK(a.c_ed.estimate == b.c_ed.estimate);
  CHECK(a.c_sc.estimate == b.c_sc.estimate);
  CHECK(a.c_lu.ci_low == b.c_lu.ci_low);
}
