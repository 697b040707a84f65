// SPDX-License-Identifier: Apache-2.0
#include "mamimo/secrecy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mamimo/parallel.hpp"

namespace mamimo {

ComplexVector mrt_beamformer(const Eigen::Ref<const ComplexVector>& g_hat) {
  const double norm = g_hat.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("mrt_beamformer: channel estimate has zero norm");
  }
  return g_hat.conjugate() / norm;
}

CapacityTriple instantaneous_capacities(
    const Eigen::Ref<const ComplexVector>& g_lu,
    const Eigen::Ref<const ComplexVector>& g_ed,
    const Eigen::Ref<const ComplexVector>& w, double p_tx, double n0) {
  if (g_lu.size() != w.size() || g_ed.size() != w.size()) {
    throw std::invalid_argument("instantaneous_capacities: length mismatch");
  }
  if (std::abs(w.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("instantaneous_capacities: beamformer not unit norm");
  }
  if (!(p_tx >= 0.0) || !(n0 > 0.0)) {
    throw std::invalid_argument("instantaneous_capacities: need p_tx >= 0 and n0 > 0");
  }
  const Complex lu_gain = g_lu.cwiseProduct(w).sum();  // g_lu^T w
  const Complex ed_gain = g_ed.cwiseProduct(w).sum();
  CapacityTriple caps;
  caps.c_lu = std::log2(1.0 + p_tx * std::norm(lu_gain) / n0);
  caps.c_ed = std::log2(1.0 + p_tx * std::norm(ed_gain) / n0);
  caps.c_sc = std::max(caps.c_lu - caps.c_ed, 0.0);
  return caps;
}

ComplexVector ls_estimate(const TrainingSlot& slot, const LinkParams& params) {
  if (!(params.p_lu > 0.0)) {
    throw std::invalid_argument("ls_estimate: p_lu must be positive");
  }
  return (std::conj(slot.p) / std::sqrt(params.p_lu)) * slot.y;
}

ErgodicCapacities ergodic_scenario(const LinkParams& params,
                                   const ErgodicOptions& opts,
                                   const RngStream& rng) {
  params.validate();
  if (opts.trials < 1) {
    throw std::invalid_argument("ergodic_scenario: trials must be >= 1");
  }
  if (!(params.n0 > 0.0)) {
    throw std::invalid_argument("ergodic_scenario: n0 must be positive");
  }
  const PskAlphabet alphabet(opts.psk_order);

  struct Partial {
    double lu = 0.0, lu_sq = 0.0;
    double ed = 0.0, ed_sq = 0.0;
    double sc = 0.0, sc_sq = 0.0;
  };
  std::vector<Partial> partials(static_cast<std::size_t>(chunk_count(opts.trials)));

  parallel_chunks(opts.trials, opts.threads,
                  [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
    Partial acc;
    for (std::int64_t t = begin; t < end; ++t) {
      RngStream trial_rng = rng.substream(static_cast<std::uint64_t>(t));
      const LinkRealization links = sample_links(params, trial_rng);
      ComplexVector w;
      if (opts.perfect_csi) {
        w = mrt_beamformer(links.g_lu);
      } else {
        const Complex p = alphabet.random_symbol(trial_rng);
        std::optional<Complex> q;
        if (opts.attack) {
          q = alphabet.random_symbol(trial_rng);
        }
        const TrainingSlot slot =
            receive_training(links.g_lu, links.g_ed, params, p, q, trial_rng);
        w = mrt_beamformer(ls_estimate(slot, params));
      }
      const CapacityTriple caps = instantaneous_capacities(
          links.g_lu, links.g_ed, w, opts.p_tx, params.n0);
      acc.lu += caps.c_lu;
      acc.lu_sq += caps.c_lu * caps.c_lu;
      acc.ed += caps.c_ed;
      acc.ed_sq += caps.c_ed * caps.c_ed;
      acc.sc += caps.c_sc;
      acc.sc_sq += caps.c_sc * caps.c_sc;
    }
    partials[static_cast<std::size_t>(chunk)] = acc;
  });

  Partial total;
  for (const Partial& p : partials) {
    total.lu += p.lu;
    total.lu_sq += p.lu_sq;
    total.ed += p.ed;
    total.ed_sq += p.ed_sq;
    total.sc += p.sc;
    total.sc_sq += p.sc_sq;
  }

  ErgodicCapacities out;
  out.c_lu = mean_interval(total.lu, total.lu_sq, opts.trials);
  out.c_ed = mean_interval(total.ed, total.ed_sq, opts.trials);
  out.c_sc = mean_interval(total.sc, total.sc_sq, opts.trials);
  out.c_sc_of_means = std::max(out.c_lu.estimate - out.c_ed.estimate, 0.0);
  out.trials = opts.trials;
  return out;
}

}  // namespace mamimo
