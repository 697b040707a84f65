// SPDX-License-Identifier: Apache-2.0
#include "mamimo/detectors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mamimo {

void Thresholds::validate() const {
  const bool finite = std::isfinite(phase_delta) && std::isfinite(gamma1) &&
                      std::isfinite(gamma2) && std::isfinite(eig_ratio) &&
                      std::isfinite(coop_floor) && std::isfinite(energy_cap);
  if (!finite) {
    throw std::invalid_argument("Thresholds: non-finite value");
  }
  if (!(phase_delta > 0.0)) {
    throw std::invalid_argument("Thresholds: phase_delta must be positive");
  }
  if (!(gamma1 > 0.0 && gamma1 < 1.0 && gamma2 > 1.0)) {
    throw std::invalid_argument("Thresholds: need 0 < gamma1 < 1 < gamma2");
  }
  if (!(eig_ratio > 1.0)) {
    throw std::invalid_argument("Thresholds: eig_ratio must exceed 1");
  }
  if (!(coop_floor > 0.0 && coop_floor < 1.0)) {
    throw std::invalid_argument("Thresholds: coop_floor must be in (0, 1)");
  }
  if (!(energy_cap > 0.0)) {
    throw std::invalid_argument("Thresholds: energy_cap must be positive");
  }
}

double naive_energy_statistic(const TrainingSlot& slot) {
  if (slot.y.size() < 1) {
    throw std::invalid_argument("naive_energy_statistic: empty slot");
  }
  return slot.y.squaredNorm() / static_cast<double>(slot.y.size());
}

DetectionResult naive_energy_decide(double statistic, double beta_p_plus_n0,
                                    double energy_cap) {
  if (!(beta_p_plus_n0 > 0.0)) {
    throw std::invalid_argument("naive_energy_decide: beta*P + N0 must be positive");
  }
  DetectionResult res;
  res.statistic = statistic;
  res.decision = statistic > energy_cap * beta_p_plus_n0 ? Decision::EdPresent
                                                         : Decision::EdAbsent;
  return res;
}

Scheme1aStats scheme1a_statistics(const TrainingSlot& slot1,
                                  const TrainingSlot& slot2) {
  if (slot1.y.size() != slot2.y.size()) {
    throw std::invalid_argument("scheme1a_statistics: slot length mismatch");
  }
  const double e1 = slot1.y.squaredNorm();
  const double e2 = slot2.y.squaredNorm();
  if (!(e1 > 0.0) || !(e2 > 0.0)) {
    throw std::invalid_argument("scheme1a_statistics: zero-norm slot");
  }
  const Complex corr = inner_product(slot1.y, slot2.y);
  double phase = std::arg(corr);
  if (phase < 0.0) {
    phase += 2.0 * std::numbers::pi;
  }
  return {phase, e1 / e2};
}

DetectionResult scheme1a_decide(const Scheme1aStats& stats,
                                const PskAlphabet& alphabet,
                                const Thresholds& th) {
  const double dist = nearest_psk_phase_distance(stats.z_phase, alphabet);
  const bool off_grid = dist > th.phase_delta;
  const bool energy_skew = stats.q_ratio < th.gamma1 || stats.q_ratio > th.gamma2;
  DetectionResult res;
  res.statistic = stats.z_phase;
  res.auxiliary = stats.q_ratio;
  res.decision = (off_grid || energy_skew) ? Decision::EdPresent
                                           : Decision::EdAbsent;
  return res;
}

ComplexMatrix scheme1b_matrix(std::span<const TrainingSlot> slots, double n0) {
  const auto order = static_cast<Eigen::Index>(slots.size());
  if (order < 2) {
    throw std::invalid_argument("scheme1b_matrix: need at least 2 slots");
  }
  if (!(n0 >= 0.0) || !std::isfinite(n0)) {
    throw std::invalid_argument("scheme1b_matrix: n0 must be nonnegative");
  }
  const Eigen::Index m = slots[0].y.size();
  for (const TrainingSlot& slot : slots) {
    if (slot.y.size() != m) {
      throw std::invalid_argument("scheme1b_matrix: slot length mismatch");
    }
  }
  const double inv_m = 1.0 / static_cast<double>(m);
  ComplexMatrix r(order, order);
  for (Eigen::Index i = 0; i < order; ++i) {
    r(i, i) = Complex(slots[static_cast<std::size_t>(i)].y.squaredNorm() * inv_m - n0, 0.0);
    for (Eigen::Index j = i + 1; j < order; ++j) {
      const Complex v = inner_product(slots[static_cast<std::size_t>(i)].y,
                                      slots[static_cast<std::size_t>(j)].y) * inv_m;
      r(i, j) = v;
      r(j, i) = std::conj(v);
    }
  }
  return r;
}

double scheme1b_ratio_statistic(const Eigen::Ref<const ComplexMatrix>& r) {
  const RealVector eigs = eigenvalues_hermitian(r);
  return eigs[0] / std::max(eigs[1], 1e-12);
}

DetectionResult scheme1b_decide(const Eigen::Ref<const ComplexMatrix>& r,
                                const Thresholds& th) {
  DetectionResult res;
  res.statistic = scheme1b_ratio_statistic(r);
  res.decision = res.statistic > th.eig_ratio ? Decision::EdAbsent
                                              : Decision::EdPresent;
  return res;
}

Scheme2Echo scheme2_beamformer(const TrainingSlot& slot, const LinkParams& params) {
  params.validate();
  if (!(params.p_lu > 0.0)) {
    throw std::invalid_argument("scheme2_beamformer: p_lu must be positive");
  }
  if (slot.y.size() < 1) {
    throw std::invalid_argument("scheme2_beamformer: empty slot");
  }
  const double m = static_cast<double>(slot.y.size());
  const double energy_above_noise = slot.y.squaredNorm() / m - params.n0;
  Scheme2Echo echo;
  echo.degenerate = energy_above_noise <= 0.0;
  const double denom = std::max(energy_above_noise, 1e-9);
  echo.w = (slot.p * std::sqrt(params.p_lu) / denom) * slot.y.conjugate();
  return echo;
}

double scheme2_lu_observe(const Eigen::Ref<const ComplexVector>& g_lu,
                          const Eigen::Ref<const ComplexVector>& w,
                          double n0_lu, RngStream& rng) {
  if (g_lu.size() != w.size() || g_lu.size() < 1) {
    throw std::invalid_argument("scheme2_lu_observe: length mismatch");
  }
  if (!(n0_lu >= 0.0) || !std::isfinite(n0_lu)) {
    throw std::invalid_argument("scheme2_lu_observe: n0_lu must be nonnegative");
  }
  Complex sample = g_lu.cwiseProduct(w).sum();  // g_lu^T w
  if (n0_lu > 0.0) {
    sample += rng.circular_gaussian(n0_lu);
  }
  return (sample / static_cast<double>(g_lu.size())).real();
}

DetectionResult scheme2_decide(double r, const Thresholds& th) {
  DetectionResult res;
  res.statistic = r;
  res.decision = r < th.coop_floor ? Decision::EdPresent : Decision::EdAbsent;
  return res;
}

}  // namespace mamimo
