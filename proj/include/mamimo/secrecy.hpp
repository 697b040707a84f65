// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mamimo/channel.hpp"
#include "mamimo/stats.hpp"

namespace mamimo {

// Instantaneous downlink capacities, bits per channel use.
struct CapacityTriple {
  double c_lu = 0.0;
  double c_ed = 0.0;
  double c_sc = 0.0;  // max(c_lu - c_ed, 0)
};

// Unit-norm MRT beamformer w = conj(g_hat)/||g_hat||; with TDD reciprocity
// the downlink channel is g^T, so this maximizes |g_hat^T w|.
ComplexVector mrt_beamformer(const Eigen::Ref<const ComplexVector>& g_hat);

// c_lu = log2(1 + p_tx |g_lu^T w|^2 / n0), likewise for the ED. Requires a
// unit-norm beamformer and n0 > 0.
CapacityTriple instantaneous_capacities(
    const Eigen::Ref<const ComplexVector>& g_lu,
    const Eigen::Ref<const ComplexVector>& g_ed,
    const Eigen::Ref<const ComplexVector>& w, double p_tx, double n0);

// Least-squares uplink estimate conj(p) y / sqrt(p_lu). Under a pilot attack
// this contains sqrt(p_ed/p_lu) conj(p) q g_ed, which is what steers the
// downlink beam partially at the ED.
ComplexVector ls_estimate(const TrainingSlot& slot, const LinkParams& params);

struct ErgodicOptions {
  double p_tx = 1.0;
  bool attack = false;       // ED transmits during training
  bool perfect_csi = true;   // otherwise CSI comes from a simulated LS estimate
  int psk_order = 4;         // pilot alphabet when CSI is estimated
  std::int64_t trials = 1000;
  int threads = 1;
};

struct ErgodicCapacities {
  CurvePoint c_lu;
  CurvePoint c_ed;
  CurvePoint c_sc;             // mean of per-trial max(c_lu - c_ed, 0)
  double c_sc_of_means = 0.0;  // max(mean c_lu - mean c_ed, 0), for comparison
  std::int64_t trials = 0;
};

// Monte-Carlo ergodic capacities. Trial t draws from rng.substream(t), so
// results are independent of the worker schedule.
ErgodicCapacities ergodic_scenario(const LinkParams& params,
                                   const ErgodicOptions& opts,
                                   const RngStream& rng);

}  // namespace mamimo
