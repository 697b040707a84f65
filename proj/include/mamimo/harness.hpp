// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mamimo/detectors.hpp"
#include "mamimo/secrecy.hpp"

namespace mamimo {

enum class DetectorId { Naive, Scheme1a, Scheme1b, Scheme2 };

// Which training slots the ED transmits in. None measures the false-alarm
// rate. BothSlots/AllSlots cover every slot (for single-slot detectors any
// non-None pattern means the ED is active). OneSlot picks one slot uniformly,
// SubsetOfSlots a uniformly random nonempty proper subset.
enum class AttackPattern { None, BothSlots, OneSlot, AllSlots, SubsetOfSlots };

std::string to_string(DetectorId id);
std::string to_string(AttackPattern pattern);
DetectorId detector_from_string(const std::string& name);
AttackPattern pattern_from_string(const std::string& name);

// Scenario a detector runs in: link parameters plus the number of training
// slots and the pilot alphabet order.
struct DetectionScenario {
  LinkParams link;
  int slots = 2;
  int psk_order = 4;

  void validate() const;
};

int default_slot_count(DetectorId id, int scheme1b_slots = 4);

struct CalibrationSpec {
  DetectorId detector = DetectorId::Scheme1a;
  double target_pfa = 0.01;
  std::int64_t trials = 10000;
  DetectionScenario scenario;

  void validate() const;
};

struct CalibrationResult {
  Thresholds thresholds;
  // False-alarm probability the empirical quantiles actually placed. Exceeds
  // target_pfa only when forced alarms (Scheme 2 degenerate denominators)
  // alone exceed the budget, in which case feasible is false.
  double placed_pfa = 0.0;
  bool feasible = true;
};

// Thresholds at the empirical H0 quantiles for target_pfa, the false-alarm
// budget split evenly across sub-tests of composite detectors (Scheme 1a:
// half to the phase test, a quarter to each energy-ratio tail).
CalibrationResult calibrate_detailed(const CalibrationSpec& spec,
                                     const RngStream& rng, int threads = 1);
Thresholds calibrate(const CalibrationSpec& spec, const RngStream& rng,
                     int threads = 1);

// Empirical P(ED declared present) with a 95% Wilson interval. x is left 0.
CurvePoint detection_probability(DetectorId id, const Thresholds& th,
                                 const DetectionScenario& scenario,
                                 AttackPattern pattern, std::int64_t trials,
                                 const RngStream& rng, int threads = 1);

struct CurveSeries {
  std::string label;
  std::vector<CurvePoint> points;
};

// ======================================================================
// Experiments
// ======================================================================

// Capacity-vs-antennas sweeps (passive eavesdropper with perfect CSI, and
// the training-phase attack with LS-estimated CSI).
struct CapacitySweepConfig {
  std::vector<int> m_grid = {2, 4, 8, 16, 32, 64, 100, 200, 400};
  std::int64_t trials = 1000;
  double beta_lu = 1.0;
  double beta_ed = 1.0;
  double p_tx = 1.0;
  double n0 = 1.0;
  double p_lu = 1.0;
  double p_ed = 0.1;  // attack sweep only
  double rho = 0.0;
  int psk_order = 4;
  int threads = 1;
};

std::vector<CurveSeries> run_fig1(const CapacitySweepConfig& cfg,
                                  const RngStream& rng);
std::vector<CurveSeries> run_fig2(const CapacitySweepConfig& cfg,
                                  const RngStream& rng);

// Detection-probability-vs-SNR comparison of the three schemes at a fixed
// antenna count, each calibrated per SNR point to the same false-alarm
// target. SNR is p_lu * beta_lu / n0 at the BS.
struct DetectionSweepConfig {
  int m = 200;
  int psk_order = 4;
  int scheme1b_slots = 4;
  double pfa = 0.01;
  double beta = 1.0;
  double pilot_power = 1.0;  // LU and ED pilot powers (equal)
  std::vector<double> snr_db;  // empty -> default_snr_grid()
  std::int64_t calibration_trials = 10000;
  std::int64_t detection_trials = 10000;
  int threads = 1;
};

std::vector<double> default_snr_grid();  // -10..20 dB, step 2

struct Fig4PointInfo {
  double snr_db = 0.0;
  DetectorId detector = DetectorId::Scheme1a;
  double placed_pfa = 0.0;
  bool feasible = true;
};

std::vector<CurveSeries> run_fig4(const DetectionSweepConfig& cfg,
                                  const RngStream& rng,
                                  std::vector<Fig4PointInfo>* info = nullptr);

// Power schedule of a ramping training-phase attacker.
struct RampSchedule {
  double start_power = 1.34217728;   // reaches 10x p_lu after 10 intervals
  double growth_per_interval = 1.25;
  int intervals = 10;

  void validate() const;
  double power_at(int interval) const;
  double final_power() const;
};

// Naive-energy-detector demo: the BS re-estimates beta every coherence
// interval from est_slots_per_interval contaminated energy observations via
// an EMA, then tests one fresh slot. Emitted series: "ramp" (schedule below)
// and "step" (constant step_power with a clean beta estimate at interval 0).
struct RampConfig {
  int m = 200;
  double beta = 1.0;
  double pilot_power = 1.0;
  double snr_db = 10.0;  // pilot_power * beta / n0
  double pfa = 0.01;
  std::int64_t trials = 2000;
  std::int64_t calibration_trials = 10000;
  int est_slots_per_interval = 8;
  double ema_weight = 0.5;
  double step_power = -1.0;  // < 0: use the ramp's final power
  int threads = 1;
};

std::vector<CurveSeries> run_ramping_demo(const RampConfig& cfg,
                                          const RampSchedule& schedule,
                                          const RngStream& rng);

}  // namespace mamimo
