// SPDX-License-Identifier: Apache-2.0
#include "mamimo/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "mamimo/io.hpp"

#ifndef MAMIMO_VERSION
#define MAMIMO_VERSION "0.1.0"
#endif

namespace mamimo {

namespace {

using nlohmann::json;

const std::set<std::string> kCommands = {"fig1", "fig2", "fig4",
                                         "calibrate", "detect", "ramp"};

json options_to_json(const Options& o) {
  return json{
      {"command", o.command},
      {"seed", o.seed},
      {"out", o.out},
      {"threads", o.threads},
      {"trials", o.trials},
      {"cal_trials", o.cal_trials},
      {"m", o.m},
      {"m_grid", o.m_grid},
      {"psk", o.psk},
      {"slots", o.slots},
      {"pfa", o.pfa},
      {"beta_lu", o.beta_lu},
      {"beta_ed", o.beta_ed},
      {"p_lu", o.p_lu},
      {"p_ed", o.p_ed},
      {"p_tx", o.p_tx},
      {"n0", o.n0},
      {"rho", o.rho},
      {"snr_db", o.snr_db},
      {"snr_min", o.snr_min},
      {"snr_max", o.snr_max},
      {"snr_step", o.snr_step},
      {"detector", o.detector},
      {"pattern", o.pattern},
      {"ramp_start", o.ramp_start},
      {"ramp_growth", o.ramp_growth},
      {"ramp_intervals", o.ramp_intervals},
      {"est_slots", o.est_slots},
      {"ema_weight", o.ema_weight},
      {"step_power", o.step_power},
      {"thresholds_file", o.thresholds_file},
  };
}

Options options_from_json(const json& j, Options base) {
  if (!j.is_object()) {
    throw UsageError("config must be a JSON object");
  }
  const json known = options_to_json(base);
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) {
      throw UsageError("unknown config key: " + item.key());
    }
  }
  try {
    if (j.contains("command")) j.at("command").get_to(base.command);
    if (j.contains("seed")) j.at("seed").get_to(base.seed);
    if (j.contains("out")) j.at("out").get_to(base.out);
    if (j.contains("threads")) j.at("threads").get_to(base.threads);
    if (j.contains("trials")) j.at("trials").get_to(base.trials);
    if (j.contains("cal_trials")) j.at("cal_trials").get_to(base.cal_trials);
    if (j.contains("m")) j.at("m").get_to(base.m);
    if (j.contains("m_grid")) j.at("m_grid").get_to(base.m_grid);
    if (j.contains("psk")) j.at("psk").get_to(base.psk);
    if (j.contains("slots")) j.at("slots").get_to(base.slots);
    if (j.contains("pfa")) j.at("pfa").get_to(base.pfa);
    if (j.contains("beta_lu")) j.at("beta_lu").get_to(base.beta_lu);
    if (j.contains("beta_ed")) j.at("beta_ed").get_to(base.beta_ed);
    if (j.contains("p_lu")) j.at("p_lu").get_to(base.p_lu);
    if (j.contains("p_ed")) j.at("p_ed").get_to(base.p_ed);
    if (j.contains("p_tx")) j.at("p_tx").get_to(base.p_tx);
    if (j.contains("n0")) j.at("n0").get_to(base.n0);
    if (j.contains("rho")) j.at("rho").get_to(base.rho);
    if (j.contains("snr_db")) j.at("snr_db").get_to(base.snr_db);
    if (j.contains("snr_min")) j.at("snr_min").get_to(base.snr_min);
    if (j.contains("snr_max")) j.at("snr_max").get_to(base.snr_max);
    if (j.contains("snr_step")) j.at("snr_step").get_to(base.snr_step);
    if (j.contains("detector")) j.at("detector").get_to(base.detector);
    if (j.contains("pattern")) j.at("pattern").get_to(base.pattern);
    if (j.contains("ramp_start")) j.at("ramp_start").get_to(base.ramp_start);
    if (j.contains("ramp_growth")) j.at("ramp_growth").get_to(base.ramp_growth);
    if (j.contains("ramp_intervals")) j.at("ramp_intervals").get_to(base.ramp_intervals);
    if (j.contains("est_slots")) j.at("est_slots").get_to(base.est_slots);
    if (j.contains("ema_weight")) j.at("ema_weight").get_to(base.ema_weight);
    if (j.contains("step_power")) j.at("step_power").get_to(base.step_power);
    if (j.contains("thresholds_file")) j.at("thresholds_file").get_to(base.thresholds_file);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  return base;
}

std::string find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw UsageError("--config requires a path");
      }
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) {
      return args[i].substr(std::string("--config=").size());
    }
  }
  return {};
}

Options load_config_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot load config: ") + e.what());
  }
  Options base;
  if (j.is_object() && j.contains("config") && j.at("config").is_object()) {
    // A run manifest: the resolved config lives under "config".
    base = options_from_json(j.at("config"), base);
    if (base.command.empty() && j.contains("command")) {
      j.at("command").get_to(base.command);
    }
    return base;
  }
  return options_from_json(j, base);
}

double snr_to_n0(double snr_db, double p_lu, double beta_lu) {
  return p_lu * beta_lu / std::pow(10.0, snr_db / 10.0);
}

std::string default_pattern(DetectorId id) {
  return id == DetectorId::Scheme1a ? "both-slots" : "all-slots";
}

// Makes every sentinel concrete so the manifest round-trips exactly.
Options resolve_defaults(Options o) {
  if (kCommands.find(o.command) == kCommands.end()) {
    throw UsageError("unknown or missing command: '" + o.command + "'");
  }
  const bool capacity_sweep = o.command == "fig1" || o.command == "fig2";

  if (o.trials < 0) {
    if (capacity_sweep) {
      o.trials = 1000;
    } else if (o.command == "ramp") {
      o.trials = 2000;
    } else {
      o.trials = 10000;
    }
  }
  if (o.p_ed < 0.0) {
    if (o.command == "fig1") {
      o.p_ed = 0.0;
    } else if (o.command == "fig2") {
      o.p_ed = 0.1 * o.p_lu;
    } else {
      o.p_ed = o.p_lu;  // equal pilot powers
    }
  }
  if (o.n0 < 0.0) {
    o.n0 = capacity_sweep ? 1.0 : snr_to_n0(o.snr_db, o.p_lu, o.beta_lu);
  }
  if (o.command == "calibrate" || o.command == "detect") {
    if (o.detector.empty()) {
      throw UsageError(o.command + " requires --detector");
    }
    const DetectorId id = detector_from_string(o.detector);
    if (o.pattern == "default") {
      o.pattern = default_pattern(id);
    }
  }
  if (o.command == "ramp" && o.step_power < 0.0) {
    RampSchedule schedule{o.ramp_start, o.ramp_growth, o.ramp_intervals};
    schedule.validate();
    o.step_power = schedule.final_power();
  }
  if (o.out.empty()) {
    const char* dir = std::getenv("MAMIMO_OUTDIR");
    const std::string base = dir != nullptr && *dir != '\0' ? dir : ".";
    const std::string ext = o.command == "calibrate" ? ".json" : ".csv";
    o.out = base + "/" + o.command + ext;
  }
  return o;
}

DetectionScenario scenario_from_options(const Options& o, DetectorId id) {
  DetectionScenario scenario;
  scenario.link.beta_lu = o.beta_lu;
  scenario.link.beta_ed = o.beta_ed;
  scenario.link.p_lu = o.p_lu;
  scenario.link.p_ed = o.p_ed;
  scenario.link.n0 = o.n0;
  scenario.link.m = o.m;
  scenario.link.rho = o.rho;
  scenario.slots = default_slot_count(id, o.slots);
  scenario.psk_order = o.psk;
  return scenario;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

void write_manifest(const Options& o, double wall_seconds, const json& extra) {
  json manifest{
      {"command", o.command},
      {"seed", o.seed},
      {"version", MAMIMO_VERSION},
      {"started_utc", utc_timestamp()},
      {"wall_clock_seconds", wall_seconds},
      {"config", options_to_json(o)},
  };
  for (const auto& item : extra.items()) {
    manifest[item.key()] = item.value();
  }
  write_text_file(o.out + ".manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

ParsedArgs parse_args(const std::vector<std::string>& args) {
  Options base;
  const std::string config_path = find_config_path(args);
  if (!config_path.empty()) {
    base = load_config_file(config_path);
  }

  ParsedArgs parsed;
  Options& o = parsed.options;
  o = base;

  CLI::App app{"Monte-Carlo simulator and detector suite for uplink-training"
               " attacks on massive MIMO physical-layer security"};
  app.name("mamimo_sim");
  app.require_subcommand(0, 1);

  std::string config_dummy;
  app.add_option("--config", config_dummy,
                 "JSON config file or run manifest; explicit flags override it");
  app.add_option("--seed", o.seed, "root RNG seed (64-bit integer)")
      ->capture_default_str();
  app.add_option("--out", o.out,
                 "output path (default $MAMIMO_OUTDIR/<command>.csv)");
  app.add_option("--threads", o.threads,
                 "worker thread cap; 0 = automatic (never changes results)")
      ->capture_default_str();
  app.add_option("--trials", o.trials,
                 "Monte-Carlo trials per point (default: 1000 capacity, "
                 "10000 detection, 2000 ramp)");
  app.add_option("--cal-trials", o.cal_trials,
                 "H0 trials used to calibrate thresholds")
      ->capture_default_str();
  app.add_option("--m", o.m, "BS antenna count (detector commands)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--m-grid", o.m_grid,
                 "comma-separated antenna counts for fig1/fig2 sweeps")
      ->delimiter(',');
  app.add_option("--psk", o.psk, "PSK alphabet order N")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  app.add_option("--slots", o.slots, "observation slots L used by scheme1b")
      ->check(CLI::Range(2, 8))
      ->capture_default_str();
  app.add_option("--pfa", o.pfa, "target false-alarm probability, in (0, 1)")
      ->capture_default_str();
  app.add_option("--beta-lu", o.beta_lu, "LU large-scale fading (linear)")
      ->capture_default_str();
  app.add_option("--beta-ed", o.beta_ed, "ED large-scale fading (linear)")
      ->capture_default_str();
  app.add_option("--p-lu", o.p_lu, "LU pilot power (linear)")
      ->capture_default_str();
  app.add_option("--p-ed", o.p_ed,
                 "ED pilot power (linear; default: 0.1*p_lu for fig2, p_lu "
                 "for detector commands)");
  app.add_option("--p-tx", o.p_tx, "BS downlink transmit power (linear)")
      ->capture_default_str();
  app.add_option("--n0", o.n0,
                 "noise power per BS antenna (linear; default: 1 for "
                 "fig1/fig2, otherwise from --snr-db)");
  app.add_option("--rho", o.rho, "ED/LU channel correlation, in [0, 1]")
      ->capture_default_str();
  app.add_option("--snr-db", o.snr_db,
                 "SNR p_lu*beta_lu/n0 in dB for single-point commands")
      ->capture_default_str();
  app.add_option("--snr-min", o.snr_min, "fig4 grid start (dB)")
      ->capture_default_str();
  app.add_option("--snr-max", o.snr_max, "fig4 grid end (dB)")
      ->capture_default_str();
  app.add_option("--snr-step", o.snr_step, "fig4 grid step (dB)")
      ->capture_default_str();
  app.add_option("--detector", o.detector,
                 "detector id: naive | scheme1a | scheme1b | scheme2");
  app.add_option("--pattern", o.pattern,
                 "attack pattern: none | both-slots | one-slot | all-slots | "
                 "subset (default: detector's natural attack)");
  app.add_option("--ramp-start", o.ramp_start, "initial ED power (linear)")
      ->capture_default_str();
  app.add_option("--ramp-growth", o.ramp_growth,
                 "ED power growth factor per coherence interval (>= 1)")
      ->capture_default_str();
  app.add_option("--ramp-intervals", o.ramp_intervals,
                 "number of coherence intervals")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  app.add_option("--est-slots", o.est_slots,
                 "beta-estimation observations per coherence interval")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--ema-weight", o.ema_weight,
                 "EMA weight of each new beta observation, in (0, 1]")
      ->capture_default_str();
  app.add_option("--step-power", o.step_power,
                 "step-attack ED power (linear; default: ramp final power)");
  app.add_option("--thresholds", o.thresholds_file,
                 "thresholds JSON produced by `calibrate` (detect only)");

  app.add_subcommand("fig1", "ergodic capacities vs antenna count, passive ED,"
                             " perfect CSI")->fallthrough();
  app.add_subcommand("fig2", "ergodic capacities vs antenna count under the "
                             "pilot attack, LS-estimated CSI")->fallthrough();
  app.add_subcommand("fig4", "detection probability vs SNR for scheme1a/1b/2 "
                             "at fixed M, per-point calibration")->fallthrough();
  app.add_subcommand("calibrate", "calibrate one detector's thresholds to the "
                                  "target false-alarm rate")->fallthrough();
  app.add_subcommand("detect", "measure one detector's detection probability "
                               "under an attack pattern")->fallthrough();
  app.add_subcommand("ramp", "naive-detector evasion demo: ramping vs step "
                             "attacker against an EMA beta tracker")->fallthrough();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("mamimo_sim");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& s : argv_storage) {
    argv.push_back(s.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    parsed.help_requested = true;
    parsed.help_text = app.help();
    return parsed;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const CLI::App* sub : app.get_subcommands()) {
    o.command = sub->get_name();
  }
  if (o.command.empty()) {
    throw UsageError("no command given (fig1|fig2|fig4|calibrate|detect|ramp)");
  }
  return parsed;
}

int execute(const Options& options) {
  const Options o = resolve_defaults(options);
  if (!(o.pfa > 0.0 && o.pfa < 1.0)) {
    throw UsageError("--pfa must be in (0, 1)");
  }
  const auto start = std::chrono::steady_clock::now();
  json extra;

  if (o.command == "fig1" || o.command == "fig2") {
    CapacitySweepConfig cfg;
    cfg.m_grid = o.m_grid;
    cfg.trials = o.trials;
    cfg.beta_lu = o.beta_lu;
    cfg.beta_ed = o.beta_ed;
    cfg.p_tx = o.p_tx;
    cfg.n0 = o.n0;
    cfg.p_lu = o.p_lu;
    cfg.p_ed = o.p_ed;
    cfg.rho = o.rho;
    cfg.psk_order = o.psk;
    cfg.threads = o.threads;
    const RngStream rng(o.seed, o.command == "fig1" ? 1 : 2);
    const std::vector<CurveSeries> curves =
        o.command == "fig1" ? run_fig1(cfg, rng) : run_fig2(cfg, rng);
    write_text_file(o.out, format_curves_csv(curves));
  } else if (o.command == "fig4") {
    DetectionSweepConfig cfg;
    cfg.m = o.m;
    cfg.psk_order = o.psk;
    cfg.scheme1b_slots = o.slots;
    cfg.pfa = o.pfa;
    cfg.beta = o.beta_lu;
    cfg.pilot_power = o.p_lu;
    for (double db = o.snr_min; db <= o.snr_max + 1e-9; db += o.snr_step) {
      cfg.snr_db.push_back(db);
    }
    cfg.calibration_trials = o.cal_trials;
    cfg.detection_trials = o.trials;
    cfg.threads = o.threads;
    std::vector<Fig4PointInfo> info;
    const std::vector<CurveSeries> curves =
        run_fig4(cfg, RngStream(o.seed, 3), &info);
    write_text_file(o.out, format_curves_csv(curves));
    json rows = json::array();
    for (const Fig4PointInfo& row : info) {
      rows.push_back(json{{"snr_db", row.snr_db},
                          {"detector", to_string(row.detector)},
                          {"placed_pfa", row.placed_pfa},
                          {"feasible", row.feasible}});
    }
    extra["calibration"] = rows;
  } else if (o.command == "calibrate") {
    const DetectorId id = detector_from_string(o.detector);
    CalibrationSpec spec;
    spec.detector = id;
    spec.target_pfa = o.pfa;
    spec.trials = o.trials;
    spec.scenario = scenario_from_options(o, id);
    const CalibrationResult result =
        calibrate_detailed(spec, RngStream(o.seed, 5), o.threads);
    json doc{
        {"detector", o.detector},
        {"target_pfa", o.pfa},
        {"trials", o.trials},
        {"scenario",
         json{{"m", o.m},
              {"beta_lu", o.beta_lu},
              {"beta_ed", o.beta_ed},
              {"p_lu", o.p_lu},
              {"p_ed", o.p_ed},
              {"n0", o.n0},
              {"rho", o.rho},
              {"slots", spec.scenario.slots},
              {"psk", o.psk}}},
        {"thresholds", thresholds_to_json(result.thresholds)},
        {"placed_pfa", result.placed_pfa},
        {"feasible", result.feasible},
    };
    write_text_file(o.out, doc.dump(2) + "\n");
  } else if (o.command == "detect") {
    const DetectorId id = detector_from_string(o.detector);
    const AttackPattern pattern = pattern_from_string(o.pattern);
    const DetectionScenario scenario = scenario_from_options(o, id);
    Thresholds th;
    if (!o.thresholds_file.empty()) {
      json j;
      try {
        j = json::parse(read_text_file(o.thresholds_file));
      } catch (const std::exception& e) {
        throw UsageError(std::string("cannot load thresholds: ") + e.what());
      }
      th = thresholds_from_json(j.is_object() && j.contains("thresholds")
                                    ? j.at("thresholds")
                                    : j);
    } else {
      CalibrationSpec spec;
      spec.detector = id;
      spec.target_pfa = o.pfa;
      spec.trials = o.cal_trials;
      spec.scenario = scenario;
      th = calibrate(spec, RngStream(o.seed, 5), o.threads);
    }
    CurvePoint point = detection_probability(
        id, th, scenario, pattern, o.trials, RngStream(o.seed, 6), o.threads);
    point.x = o.snr_db;
    const std::vector<CurveSeries> curves = {
        {o.detector + ":" + o.pattern, {point}}};
    write_text_file(o.out, format_curves_csv(curves));
  } else if (o.command == "ramp") {
    RampConfig cfg;
    cfg.m = o.m;
    cfg.beta = o.beta_lu;
    cfg.pilot_power = o.p_lu;
    cfg.snr_db = o.snr_db;
    cfg.pfa = o.pfa;
    cfg.trials = o.trials;
    cfg.calibration_trials = o.cal_trials;
    cfg.est_slots_per_interval = o.est_slots;
    cfg.ema_weight = o.ema_weight;
    cfg.step_power = o.step_power;
    cfg.threads = o.threads;
    RampSchedule schedule{o.ramp_start, o.ramp_growth, o.ramp_intervals};
    const std::vector<CurveSeries> curves =
        run_ramping_demo(cfg, schedule, RngStream(o.seed, 4));
    write_text_file(o.out, format_curves_csv(curves));
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_manifest(o, wall, extra);
  return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  try {
    const ParsedArgs parsed = parse_args(args);
    if (parsed.help_requested) {
      std::cout << parsed.help_text;
      return kExitOk;
    }
    return execute(parsed.options);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace mamimo
