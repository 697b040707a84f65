// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mamimo/channel.hpp"

using namespace mamimo;

namespace {

LinkParams make_params(Eigen::Index m) {
  LinkParams p;
  p.beta_lu = 1.0;
  p.beta_ed = 1.0;
  p.p_lu = 1.0;
  p.p_ed = 0.0;
  p.n0 = 0.1;
  p.m = m;
  return p;
}

double empirical_correlation(const ComplexVector& a, const ComplexVector& b) {
  return std::abs(inner_product(a, b)) / (a.norm() * b.norm());
}

}  // namespace

TEST_CASE("link parameter validation") {
  LinkParams p = make_params(4);
  CHECK_NOTHROW(p.validate());
  p.beta_lu = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = make_params(4);
  p.rho = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = make_params(4);
  p.m = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = make_params(4);
  p.n0 = -0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = make_params(4);
  p.n0 = 0.0;  // noiseless scenarios are allowed
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("independent links decorrelate") {
  LinkParams p = make_params(10000);
  RngStream rng(1);
  const LinkRealization links = sample_links(p, rng);
  CHECK(empirical_correlation(links.g_lu, links.g_ed) < 0.05);
}

TEST_CASE("fully correlated links coincide when betas match") {
  LinkParams p = make_params(64);
  p.rho = 1.0;
  RngStream rng(2);
  const LinkRealization links = sample_links(p, rng);
  for (Eigen::Index i = 0; i < p.m; ++i) {
    CHECK(links.g_ed[i] == links.g_lu[i]);
  }
}

TEST_CASE("partial correlation lands near rho with the right ED power") {
  LinkParams p = make_params(200);
  p.rho = 0.5;
  p.beta_ed = 2.0;
  RngStream rng(3);
  double corr_sum = 0.0;
  double power_sum = 0.0;
  const int reps = 400;
  for (int r = 0; r < reps; ++r) {
    const LinkRealization links = sample_links(p, rng);
    corr_sum += empirical_correlation(links.g_lu, links.g_ed);
    power_sum += links.g_ed.squaredNorm() / static_cast<double>(p.m);
  }
  CHECK(corr_sum / reps == doctest::Approx(0.5).epsilon(0.05));
  CHECK(power_sum / reps == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("channel power concentrates at beta") {
  LinkParams p = make_params(100000);
  RngStream rng(4);
  const LinkRealization links = sample_links(p, rng);
  const double power = links.g_lu.squaredNorm() / static_cast<double>(p.m);
  CHECK(power > 0.98);
  CHECK(power < 1.02);
}

TEST_CASE("noiseless training returns the scaled channel exactly") {
  LinkParams p = make_params(32);
  p.n0 = 0.0;
  p.p_lu = 4.0;
  RngStream rng(5);
  const LinkRealization links = sample_links(p, rng);
  const Complex pilot = std::polar(1.0, 0.7);
  const TrainingSlot slot =
      receive_training(links.g_lu, links.g_ed, p, pilot, std::nullopt, rng);
  for (Eigen::Index i = 0; i < p.m; ++i) {
    CHECK(std::abs(slot.y[i] / (2.0 * pilot) - links.g_lu[i]) < 1e-12);
  }
}

TEST_CASE("zero ED power with a pilot equals a silent ED bit for bit") {
  LinkParams p = make_params(64);
  p.p_ed = 0.0;
  RngStream rng(6);
  const LinkRealization links = sample_links(p, rng);
  RngStream noise_a = rng.substream(0);
  RngStream noise_b = rng.substream(0);
  const TrainingSlot with_q = receive_training(
      links.g_lu, links.g_ed, p, Complex{1, 0}, Complex{0, 1}, noise_a);
  const TrainingSlot without_q = receive_training(
      links.g_lu, links.g_ed, p, Complex{1, 0}, std::nullopt, noise_b);
  for (Eigen::Index i = 0; i < p.m; ++i) {
    CHECK(with_q.y[i] == without_q.y[i]);
  }
}

TEST_CASE("pilot symbols must be unit modulus") {
  LinkParams p = make_params(8);
  RngStream rng(7);
  const LinkRealization links = sample_links(p, rng);
  CHECK_THROWS_AS(receive_training(links.g_lu, links.g_ed, p, Complex{2, 0},
                                   std::nullopt, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(receive_training(links.g_lu, links.g_ed, p, Complex{1, 0},
                                   Complex{0.5, 0}, rng),
                  std::invalid_argument);
}

TEST_CASE("received energy concentrates at beta*P + N0") {
  LinkParams p = make_params(100000);
  RngStream rng(8);
  const LinkRealization links = sample_links(p, rng);
  const TrainingSlot slot = receive_training(links.g_lu, links.g_ed, p,
                                             Complex{1, 0}, std::nullopt, rng);
  const double energy = slot.y.squaredNorm() / static_cast<double>(p.m);
  CHECK(energy > 1.08);
  CHECK(energy < 1.12);
}

TEST_CASE("energy concentration holds per trial at m = 1e4") {
  LinkParams p = make_params(10000);
  RngStream root(9);
  SUBCASE("no attack: beta_lu p_lu + n0") {
    for (int t = 0; t < 100; ++t) {
      RngStream rng = root.substream(static_cast<std::uint64_t>(t));
      const LinkRealization links = sample_links(p, rng);
      const TrainingSlot slot = receive_training(
          links.g_lu, links.g_ed, p, Complex{1, 0}, std::nullopt, rng);
      const double energy = slot.y.squaredNorm() / static_cast<double>(p.m);
      CHECK(std::abs(energy - 1.1) < 0.05 * 1.1);
    }
  }
  SUBCASE("attack: beta_lu p_lu + beta_ed p_ed + n0") {
    LinkParams pa = p;
    pa.p_ed = 1.0;
    for (int t = 0; t < 100; ++t) {
      RngStream rng = root.substream(static_cast<std::uint64_t>(t));
      const LinkRealization links = sample_links(pa, rng);
      const TrainingSlot slot = receive_training(
          links.g_lu, links.g_ed, pa, Complex{1, 0}, Complex{1, 0}, rng);
      const double energy = slot.y.squaredNorm() / static_cast<double>(pa.m);
      CHECK(std::abs(energy - 2.1) < 0.05 * 2.1);
    }
  }
}

TEST_CASE("cross-concentration of independent channels") {
  LinkParams p = make_params(10000);
  RngStream root(10);
  int below = 0;
  const int reps = 100;
  for (int t = 0; t < reps; ++t) {
    RngStream rng = root.substream(static_cast<std::uint64_t>(t));
    const LinkRealization links = sample_links(p, rng);
    const double cross =
        std::abs(inner_product(links.g_lu, links.g_ed)) / static_cast<double>(p.m);
    below += cross < 0.05 ? 1 : 0;
  }
  CHECK(below >= 95);
}
