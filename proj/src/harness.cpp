// SPDX-License-Identifier: Apache-2.0
#include "mamimo/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mamimo/parallel.hpp"

namespace mamimo {

std::string to_string(DetectorId id) {
  switch (id) {
    case DetectorId::Naive: return "naive";
    case DetectorId::Scheme1a: return "scheme1a";
    case DetectorId::Scheme1b: return "scheme1b";
    case DetectorId::Scheme2: return "scheme2";
  }
  throw std::invalid_argument("unknown DetectorId");
}

std::string to_string(AttackPattern pattern) {
  switch (pattern) {
    case AttackPattern::None: return "none";
    case AttackPattern::BothSlots: return "both-slots";
    case AttackPattern::OneSlot: return "one-slot";
    case AttackPattern::AllSlots: return "all-slots";
    case AttackPattern::SubsetOfSlots: return "subset";
  }
  throw std::invalid_argument("unknown AttackPattern");
}

DetectorId detector_from_string(const std::string& name) {
  if (name == "naive") return DetectorId::Naive;
  if (name == "scheme1a") return DetectorId::Scheme1a;
  if (name == "scheme1b") return DetectorId::Scheme1b;
  if (name == "scheme2") return DetectorId::Scheme2;
  throw std::invalid_argument("unknown detector: " + name);
}

AttackPattern pattern_from_string(const std::string& name) {
  if (name == "none") return AttackPattern::None;
  if (name == "both-slots") return AttackPattern::BothSlots;
  if (name == "one-slot") return AttackPattern::OneSlot;
  if (name == "all-slots") return AttackPattern::AllSlots;
  if (name == "subset") return AttackPattern::SubsetOfSlots;
  throw std::invalid_argument("unknown attack pattern: " + name);
}

void DetectionScenario::validate() const {
  link.validate();
  if (slots < 1 || slots > 8) {
    throw std::invalid_argument("DetectionScenario: slots must be in [1, 8]");
  }
  if (psk_order < 2) {
    throw std::invalid_argument("DetectionScenario: psk_order must be >= 2");
  }
}

int default_slot_count(DetectorId id, int scheme1b_slots) {
  switch (id) {
    case DetectorId::Naive:
    case DetectorId::Scheme2:
      return 1;
    case DetectorId::Scheme1a:
      return 2;
    case DetectorId::Scheme1b:
      return scheme1b_slots;
  }
  throw std::invalid_argument("unknown DetectorId");
}

void CalibrationSpec::validate() const {
  scenario.validate();
  if (!(target_pfa > 0.0) || !(target_pfa < 1.0)) {
    throw std::invalid_argument("CalibrationSpec: target_pfa must be in (0, 1)");
  }
  if (trials < 1000) {
    throw std::invalid_argument("CalibrationSpec: need at least 1000 trials");
  }
  if (static_cast<double>(trials) * target_pfa < 10.0) {
    throw std::invalid_argument(
        "CalibrationSpec: trials * target_pfa must be >= 10");
  }
}

namespace {

// Statistics of one simulated detection episode.
struct TrialStats {
  double z_phase = 0.0;
  double phase_dist = 0.0;
  double q_ratio = 1.0;
  double eig_ratio = 0.0;
  double lu_sample = 0.0;
  bool degenerate = false;
  double energy = 0.0;
};

int trial_slot_count(DetectorId id, const DetectionScenario& sc) {
  return id == DetectorId::Scheme1b ? sc.slots : default_slot_count(id);
}

std::array<bool, 8> attack_mask(AttackPattern pattern, int slots,
                                RngStream& rng) {
  std::array<bool, 8> mask{};
  switch (pattern) {
    case AttackPattern::None:
      break;
    case AttackPattern::BothSlots:
    case AttackPattern::AllSlots:
      for (int s = 0; s < slots; ++s) mask[static_cast<std::size_t>(s)] = true;
      break;
    case AttackPattern::OneSlot:
      mask[rng.next_below(static_cast<std::uint64_t>(slots))] = true;
      break;
    case AttackPattern::SubsetOfSlots: {
      if (slots < 2) {
        throw std::invalid_argument(
            "attack pattern 'subset' needs at least two slots");
      }
      const auto combos = (std::uint64_t{1} << slots) - 2;  // proper, nonempty
      const std::uint64_t bits = 1 + rng.next_below(combos);
      for (int s = 0; s < slots; ++s) {
        mask[static_cast<std::size_t>(s)] = ((bits >> s) & 1u) != 0;
      }
      break;
    }
  }
  return mask;
}

// Runs one episode: channel draw, pattern draw, then the per-slot pilots and
// noise, and finally the detector statistic. `rng` is the trial substream.
TrialStats run_trial(DetectorId id, const DetectionScenario& sc,
                     AttackPattern pattern, RngStream rng) {
  const int slots = trial_slot_count(id, sc);
  const PskAlphabet alphabet(sc.psk_order);
  const bool random_pilots =
      id == DetectorId::Scheme1a || id == DetectorId::Scheme1b;

  const LinkRealization links = sample_links(sc.link, rng);
  const std::array<bool, 8> mask = attack_mask(pattern, slots, rng);

  std::vector<TrainingSlot> received;
  received.reserve(static_cast<std::size_t>(slots));
  for (int s = 0; s < slots; ++s) {
    const Complex p =
        random_pilots ? alphabet.random_symbol(rng) : Complex{1.0, 0.0};
    std::optional<Complex> q;
    if (mask[static_cast<std::size_t>(s)]) {
      q = alphabet.random_symbol(rng);
    }
    received.push_back(
        receive_training(links.g_lu, links.g_ed, sc.link, p, q, rng));
  }

  TrialStats out;
  switch (id) {
    case DetectorId::Naive:
      out.energy = naive_energy_statistic(received[0]);
      break;
    case DetectorId::Scheme1a: {
      const Scheme1aStats stats = scheme1a_statistics(received[0], received[1]);
      out.z_phase = stats.z_phase;
      out.q_ratio = stats.q_ratio;
      out.phase_dist = nearest_psk_phase_distance(stats.z_phase, alphabet);
      break;
    }
    case DetectorId::Scheme1b: {
      const ComplexMatrix r = scheme1b_matrix(received, sc.link.n0);
      out.eig_ratio = scheme1b_ratio_statistic(r);
      break;
    }
    case DetectorId::Scheme2: {
      const Scheme2Echo echo = scheme2_beamformer(received[0], sc.link);
      out.degenerate = echo.degenerate;
      out.lu_sample =
          scheme2_lu_observe(links.g_lu, echo.w, sc.link.n0, rng);
      break;
    }
  }
  return out;
}

bool trial_fired(DetectorId id, const TrialStats& stats,
                 const DetectionScenario& sc, const Thresholds& th) {
  switch (id) {
    case DetectorId::Naive: {
      const double baseline = sc.link.beta_lu * sc.link.p_lu + sc.link.n0;
      return naive_energy_decide(stats.energy, baseline, th.energy_cap)
                 .decision == Decision::EdPresent;
    }
    case DetectorId::Scheme1a:
      return stats.phase_dist > th.phase_delta || stats.q_ratio < th.gamma1 ||
             stats.q_ratio > th.gamma2;
    case DetectorId::Scheme1b:
      return !(stats.eig_ratio > th.eig_ratio);
    case DetectorId::Scheme2:
      return stats.degenerate ||
             scheme2_decide(stats.lu_sample, th).decision == Decision::EdPresent;
  }
  throw std::invalid_argument("unknown DetectorId");
}

std::vector<TrialStats> collect_h0_stats(const CalibrationSpec& spec,
                                         const RngStream& rng, int threads) {
  std::vector<TrialStats> all(static_cast<std::size_t>(spec.trials));
  parallel_chunks(spec.trials, threads,
                  [&](std::int64_t, std::int64_t begin, std::int64_t end) {
    for (std::int64_t t = begin; t < end; ++t) {
      all[static_cast<std::size_t>(t)] =
          run_trial(spec.detector, spec.scenario, AttackPattern::None,
                    rng.substream(static_cast<std::uint64_t>(t)));
    }
  });
  return all;
}

}  // namespace

CalibrationResult calibrate_detailed(const CalibrationSpec& spec,
                                     const RngStream& rng, int threads) {
  spec.validate();
  const std::vector<TrialStats> h0 = collect_h0_stats(spec, rng, threads);
  const double alpha = spec.target_pfa;
  const auto n = static_cast<double>(spec.trials);

  CalibrationResult result;
  Thresholds& th = result.thresholds;
  switch (spec.detector) {
    case DetectorId::Naive: {
      std::vector<double> energies;
      energies.reserve(h0.size());
      for (const TrialStats& s : h0) energies.push_back(s.energy);
      const double baseline =
          spec.scenario.link.beta_lu * spec.scenario.link.p_lu +
          spec.scenario.link.n0;
      th.energy_cap = upper_tail_threshold(energies, alpha) / baseline;
      break;
    }
    case DetectorId::Scheme1a: {
      std::vector<double> dists, ratios;
      dists.reserve(h0.size());
      ratios.reserve(h0.size());
      for (const TrialStats& s : h0) {
        dists.push_back(s.phase_dist);
        ratios.push_back(s.q_ratio);
      }
      th.phase_delta = upper_tail_threshold(dists, alpha / 2.0);
      th.gamma1 = lower_tail_threshold(ratios, alpha / 4.0);
      th.gamma2 = upper_tail_threshold(ratios, alpha / 4.0);
      break;
    }
    case DetectorId::Scheme1b: {
      std::vector<double> ratios;
      ratios.reserve(h0.size());
      for (const TrialStats& s : h0) ratios.push_back(s.eig_ratio);
      // lambda1 >= lambda2 makes every statistic >= 1; keep the threshold
      // strictly above 1 so Thresholds stays well-formed under ties.
      th.eig_ratio =
          std::max(lower_tail_threshold(ratios, alpha), 1.0 + 1e-12);
      break;
    }
    case DetectorId::Scheme2: {
      std::vector<double> samples;
      samples.reserve(h0.size());
      std::int64_t degenerate = 0;
      for (const TrialStats& s : h0) {
        if (s.degenerate) {
          ++degenerate;
        } else {
          samples.push_back(s.lu_sample);
        }
      }
      // Degenerate episodes are forced alarms, so they consume false-alarm
      // budget before the floor is placed.
      const std::int64_t want = std::llround(n * alpha);
      const std::int64_t below_floor = want - degenerate;
      const auto usable = static_cast<std::int64_t>(samples.size());
      if (below_floor >= 1 && below_floor <= usable - 1) {
        const double sub_alpha =
            static_cast<double>(below_floor) / static_cast<double>(usable);
        th.coop_floor = lower_tail_threshold(samples, sub_alpha);
      } else {
        result.feasible = false;
        th.coop_floor = std::numeric_limits<double>::min();
      }
      th.coop_floor = std::clamp(th.coop_floor,
                                 std::numeric_limits<double>::min(),
                                 1.0 - 1e-12);
      break;
    }
  }
  th.validate();

  std::int64_t fired = 0;
  for (const TrialStats& s : h0) {
    fired += trial_fired(spec.detector, s, spec.scenario, th) ? 1 : 0;
  }
  result.placed_pfa = static_cast<double>(fired) / n;
  return result;
}

Thresholds calibrate(const CalibrationSpec& spec, const RngStream& rng,
                     int threads) {
  return calibrate_detailed(spec, rng, threads).thresholds;
}

CurvePoint detection_probability(DetectorId id, const Thresholds& th,
                                 const DetectionScenario& scenario,
                                 AttackPattern pattern, std::int64_t trials,
                                 const RngStream& rng, int threads) {
  scenario.validate();
  th.validate();
  if (trials < 1) {
    throw std::invalid_argument("detection_probability: trials must be >= 1");
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(chunk_count(trials)), 0);
  parallel_chunks(trials, threads,
                  [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
    std::int64_t fired = 0;
    for (std::int64_t t = begin; t < end; ++t) {
      const TrialStats stats = run_trial(
          id, scenario, pattern, rng.substream(static_cast<std::uint64_t>(t)));
      fired += trial_fired(id, stats, scenario, th) ? 1 : 0;
    }
    counts[static_cast<std::size_t>(chunk)] = fired;
  });
  std::int64_t fired = 0;
  for (const std::int64_t c : counts) fired += c;
  return wilson_interval(fired, trials);
}

// ======================================================================
// Experiments
// ======================================================================

namespace {

std::vector<CurveSeries> run_capacity_sweep(const CapacitySweepConfig& cfg,
                                            const RngStream& rng, bool attack) {
  if (cfg.m_grid.empty()) {
    throw std::invalid_argument("capacity sweep: empty antenna grid");
  }
  CurveSeries lu{"c_lu", {}};
  CurveSeries ed{"c_ed", {}};
  CurveSeries sc{"c_sc", {}};
  for (std::size_t i = 0; i < cfg.m_grid.size(); ++i) {
    LinkParams params;
    params.beta_lu = cfg.beta_lu;
    params.beta_ed = cfg.beta_ed;
    params.p_lu = cfg.p_lu;
    params.p_ed = attack ? cfg.p_ed : 0.0;
    params.n0 = cfg.n0;
    params.m = cfg.m_grid[i];
    params.rho = cfg.rho;

    ErgodicOptions opts;
    opts.p_tx = cfg.p_tx;
    opts.attack = attack;
    opts.perfect_csi = !attack;
    opts.psk_order = cfg.psk_order;
    opts.trials = cfg.trials;
    opts.threads = cfg.threads;

    const ErgodicCapacities erg =
        ergodic_scenario(params, opts, rng.substream(i));
    const double x = static_cast<double>(cfg.m_grid[i]);
    CurvePoint p_lu = erg.c_lu;
    CurvePoint p_ed = erg.c_ed;
    CurvePoint p_sc = erg.c_sc;
    p_lu.x = p_ed.x = p_sc.x = x;
    lu.points.push_back(p_lu);
    ed.points.push_back(p_ed);
    sc.points.push_back(p_sc);
  }
  return {lu, ed, sc};
}

}  // namespace

std::vector<CurveSeries> run_fig1(const CapacitySweepConfig& cfg,
                                  const RngStream& rng) {
  return run_capacity_sweep(cfg, rng, /*attack=*/false);
}

std::vector<CurveSeries> run_fig2(const CapacitySweepConfig& cfg,
                                  const RngStream& rng) {
  return run_capacity_sweep(cfg, rng, /*attack=*/true);
}

std::vector<double> default_snr_grid() {
  std::vector<double> grid;
  for (int db = -10; db <= 20; db += 2) {
    grid.push_back(static_cast<double>(db));
  }
  return grid;
}

std::vector<CurveSeries> run_fig4(const DetectionSweepConfig& cfg,
                                  const RngStream& rng,
                                  std::vector<Fig4PointInfo>* info) {
  const std::vector<double> grid =
      cfg.snr_db.empty() ? default_snr_grid() : cfg.snr_db;
  const std::array<DetectorId, 3> detectors = {
      DetectorId::Scheme1a, DetectorId::Scheme1b, DetectorId::Scheme2};

  std::vector<CurveSeries> series;
  series.reserve(detectors.size());
  for (const DetectorId id : detectors) {
    series.push_back({to_string(id), {}});
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double snr_linear = std::pow(10.0, grid[i] / 10.0);
    LinkParams link;
    link.beta_lu = cfg.beta;
    link.beta_ed = cfg.beta;
    link.p_lu = cfg.pilot_power;
    link.p_ed = cfg.pilot_power;
    link.n0 = cfg.pilot_power * cfg.beta / snr_linear;
    link.m = cfg.m;

    const RngStream point_rng = rng.substream(i);
    for (std::size_t d = 0; d < detectors.size(); ++d) {
      const DetectorId id = detectors[d];
      DetectionScenario scenario;
      scenario.link = link;
      scenario.slots = default_slot_count(id, cfg.scheme1b_slots);
      scenario.psk_order = cfg.psk_order;

      CalibrationSpec spec;
      spec.detector = id;
      spec.target_pfa = cfg.pfa;
      spec.trials = cfg.calibration_trials;
      spec.scenario = scenario;

      const CalibrationResult cal =
          calibrate_detailed(spec, point_rng.substream(2 * d), cfg.threads);
      const AttackPattern pattern = id == DetectorId::Scheme1a
                                        ? AttackPattern::BothSlots
                                        : AttackPattern::AllSlots;
      CurvePoint point = detection_probability(
          id, cal.thresholds, scenario, pattern, cfg.detection_trials,
          point_rng.substream(2 * d + 1), cfg.threads);
      point.x = grid[i];
      series[d].points.push_back(point);
      if (info != nullptr) {
        info->push_back({grid[i], id, cal.placed_pfa, cal.feasible});
      }
    }
  }
  return series;
}

void RampSchedule::validate() const {
  if (!(start_power >= 0.0) || !std::isfinite(start_power)) {
    throw std::invalid_argument("RampSchedule: start_power must be >= 0");
  }
  if (!(growth_per_interval >= 1.0) || !std::isfinite(growth_per_interval)) {
    throw std::invalid_argument("RampSchedule: growth must be >= 1");
  }
  if (intervals < 2) {
    throw std::invalid_argument("RampSchedule: need at least 2 intervals");
  }
}

double RampSchedule::power_at(int interval) const {
  if (interval < 0 || interval >= intervals) {
    throw std::invalid_argument("RampSchedule: interval out of range");
  }
  return start_power * std::pow(growth_per_interval, interval);
}

double RampSchedule::final_power() const { return power_at(intervals - 1); }

std::vector<CurveSeries> run_ramping_demo(const RampConfig& cfg,
                                          const RampSchedule& schedule,
                                          const RngStream& rng) {
  schedule.validate();
  if (cfg.trials < 1 || cfg.est_slots_per_interval < 1) {
    throw std::invalid_argument("run_ramping_demo: bad trial configuration");
  }
  if (!(cfg.ema_weight > 0.0) || !(cfg.ema_weight <= 1.0)) {
    throw std::invalid_argument("run_ramping_demo: ema_weight must be in (0, 1]");
  }
  const double snr_linear = std::pow(10.0, cfg.snr_db / 10.0);
  LinkParams link;
  link.beta_lu = cfg.beta;
  link.beta_ed = cfg.beta;
  link.p_lu = cfg.pilot_power;
  link.p_ed = 0.0;
  link.n0 = cfg.pilot_power * cfg.beta / snr_linear;
  link.m = cfg.m;

  CalibrationSpec cal_spec;
  cal_spec.detector = DetectorId::Naive;
  cal_spec.target_pfa = cfg.pfa;
  cal_spec.trials = cfg.calibration_trials;
  cal_spec.scenario = DetectionScenario{link, 1, 4};
  const Thresholds th = calibrate(cal_spec, rng.substream(0), cfg.threads);

  const int intervals = schedule.intervals;
  const double step_power =
      cfg.step_power < 0.0 ? schedule.final_power() : cfg.step_power;

  std::vector<CurveSeries> out;
  const std::array<std::string, 2> labels = {"ramp", "step"};
  for (std::size_t series_idx = 0; series_idx < labels.size(); ++series_idx) {
    std::vector<double> powers(static_cast<std::size_t>(intervals));
    for (int t = 0; t < intervals; ++t) {
      powers[static_cast<std::size_t>(t)] =
          series_idx == 0 ? schedule.power_at(t) : step_power;
    }

    const RngStream series_rng = rng.substream(1 + series_idx);
    const std::int64_t chunks = chunk_count(cfg.trials);
    std::vector<std::int64_t> counts(
        static_cast<std::size_t>(chunks * intervals), 0);

    parallel_chunks(cfg.trials, cfg.threads,
                    [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
      for (std::int64_t trial = begin; trial < end; ++trial) {
        RngStream trial_rng =
            series_rng.substream(static_cast<std::uint64_t>(trial));
        double beta_hat = cfg.beta;  // clean estimate entering the attack
        for (int t = 0; t < intervals; ++t) {
          LinkParams active = link;
          active.p_ed = powers[static_cast<std::size_t>(t)];
          // The BS keeps refreshing its beta estimate from the contaminated
          // training energy before it screens a slot; the ED's ramp hides in
          // exactly this adaptation.
          for (int e = 0; e < cfg.est_slots_per_interval; ++e) {
            const LinkRealization links = sample_links(active, trial_rng);
            const TrainingSlot slot =
                receive_training(links.g_lu, links.g_ed, active,
                                 Complex{1.0, 0.0}, Complex{1.0, 0.0}, trial_rng);
            const double observed =
                (naive_energy_statistic(slot) - active.n0) / active.p_lu;
            beta_hat = (1.0 - cfg.ema_weight) * beta_hat +
                       cfg.ema_weight * observed;
          }
          const LinkRealization links = sample_links(active, trial_rng);
          const TrainingSlot slot =
              receive_training(links.g_lu, links.g_ed, active,
                               Complex{1.0, 0.0}, Complex{1.0, 0.0}, trial_rng);
          const double baseline =
              std::max(beta_hat, 0.0) * active.p_lu + active.n0;
          const DetectionResult res = naive_energy_decide(
              naive_energy_statistic(slot), baseline, th.energy_cap);
          if (res.decision == Decision::EdPresent) {
            ++counts[static_cast<std::size_t>(chunk * intervals + t)];
          }
        }
      }
    });

    CurveSeries series{labels[series_idx], {}};
    for (int t = 0; t < intervals; ++t) {
      std::int64_t fired = 0;
      for (std::int64_t c = 0; c < chunks; ++c) {
        fired += counts[static_cast<std::size_t>(c * intervals + t)];
      }
      CurvePoint point = wilson_interval(fired, cfg.trials);
      point.x = static_cast<double>(t);
      series.points.push_back(point);
    }
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace mamimo
