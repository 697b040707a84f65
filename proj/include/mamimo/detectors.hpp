// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "mamimo/channel.hpp"

namespace mamimo {

enum class Decision { EdAbsent, EdPresent };

struct DetectionResult {
  double statistic = 0.0;
  std::optional<double> auxiliary;  // e.g. the Scheme 1a energy ratio
  Decision decision = Decision::EdAbsent;
};

// Decision thresholds. phase_delta and (gamma1, gamma2) drive Scheme 1a's
// phase and energy-ratio tests, eig_ratio Scheme 1b's eigenvalue-ratio cut,
// coop_floor Scheme 2's floor on the echoed sample, energy_cap the naive
// detector's multiplier on beta*P + N0. All are calibration outputs; the
// defaults are placeholders only.
struct Thresholds {
  double phase_delta = 0.1;
  double gamma1 = 0.8;
  double gamma2 = 1.25;
  double eig_ratio = 10.0;
  double coop_floor = 0.5;
  double energy_cap = 1.2;

  void validate() const;
};

// ||y||^2 / M, the per-antenna received training energy.
double naive_energy_statistic(const TrainingSlot& slot);

// ED present iff the energy exceeds energy_cap * (beta P + N0).
DetectionResult naive_energy_decide(double statistic, double beta_p_plus_n0,
                                    double energy_cap);

struct Scheme1aStats {
  double z_phase = 0.0;  // arg(y1^H y2), wrapped to [0, 2*pi)
  double q_ratio = 0.0;  // ||y1||^2 / ||y2||^2
};

Scheme1aStats scheme1a_statistics(const TrainingSlot& slot1,
                                  const TrainingSlot& slot2);

// ED present iff the phase is farther than phase_delta from every alphabet
// grid phase, or the energy ratio leaves the [gamma1, gamma2] window.
DetectionResult scheme1a_decide(const Scheme1aStats& stats,
                                const PskAlphabet& alphabet,
                                const Thresholds& th);

// R = Y^H Y / M - n0 I from L >= 2 equal-length slots. Hermitian by
// construction with a real diagonal.
ComplexMatrix scheme1b_matrix(std::span<const TrainingSlot> slots, double n0);

// lambda1 / max(lambda2, 1e-12); the floor keeps noiseless rank-one inputs
// from dividing by zero.
double scheme1b_ratio_statistic(const Eigen::Ref<const ComplexMatrix>& r);

// ED absent iff the eigenvalue ratio exceeds eig_ratio (R near rank one).
DetectionResult scheme1b_decide(const Eigen::Ref<const ComplexMatrix>& r,
                                const Thresholds& th);

struct Scheme2Echo {
  ComplexVector w;
  // Set when the energy estimate fell at or below the noise floor; the
  // decision is then forced to ED-present by the caller.
  bool degenerate = false;
};

// Echo beamformer built from the received training signal so that the LU's
// scaled observation (1/M) g_lu^T w converges to the agreed value 1 when no
// ED disturbed the training, and to
// beta_lu p_lu / (beta_lu p_lu + beta_ed p_ed) under a pilot attack.
Scheme2Echo scheme2_beamformer(const TrainingSlot& slot, const LinkParams& params);

// Re{(g_lu^T w + n_lu) / M} with n_lu ~ CN(0, n0_lu): the LU's received
// sample after the agreed 1/M scaling.
double scheme2_lu_observe(const Eigen::Ref<const ComplexVector>& g_lu,
                          const Eigen::Ref<const ComplexVector>& w,
                          double n0_lu, RngStream& rng);

// ED present iff the observation fell below coop_floor.
DetectionResult scheme2_decide(double r, const Thresholds& th);

}  // namespace mamimo
