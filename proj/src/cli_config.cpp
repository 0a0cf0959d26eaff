#include "cdmasim/cli_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "CLI11.hpp"

namespace cdmasim {

namespace {

struct Preset {
  ExperimentConfig config;
  std::string name;
};

Preset make_preset(const std::string& name) {
  Preset p;
  p.name = name;
  ExperimentConfig& c = p.config;
  // Desk-scale defaults; the reference scale is --trials 300 --symbols 1000.
  c.users = 10;
  c.relays = 6;
  c.chips = 16;
  c.paths = 3;
  c.symbols_per_packet = 200;
  c.trials = 40;
  c.detector.reliability_threshold = 0.25;
  c.detector.n_reexamined = 2;
  c.detector.pic_iterations = 3;
  c.detector.modulation = Modulation::BPSK;

  if (name.empty()) {
    // Flag-driven run: single detector/strategy series.
    return p;
  }
  if (name == "fig4-desk") {
    c.detectors = {DetectorKind::Rake, DetectorKind::Sic, DetectorKind::Pic,
                   DetectorKind::GlPic};
    c.strategies = {Strategy::Proposed};
    return p;
  }
  if (name == "fig5a-desk") {
    c.detectors = {DetectorKind::GlPic};
    c.strategies = {Strategy::None, Strategy::Standard, Strategy::Proposed,
                    Strategy::Exhaustive};
    return p;
  }
  if (name == "fig5b-desk") {
    c.detectors = {DetectorKind::GlPic};
    c.strategies = {Strategy::None, Strategy::Standard, Strategy::Proposed,
                    Strategy::Exhaustive};
    c.sweep_axis = SweepAxis::Users;
    c.sweep_values = {2, 4, 6, 8, 10};
    c.fixed_snr_db = 15.0;
    return p;
  }
  throw ConfigError("preset: unknown preset '" + name + "'");
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& field) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
        ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(field + ": cannot parse number '" + item + "'");
    }
  }
  if (values.empty()) throw ConfigError(field + ": empty list");
  return values;
}

DetectorKind parse_detector(const std::string& s) {
  if (s == "rake") return DetectorKind::Rake;
  if (s == "sic") return DetectorKind::Sic;
  if (s == "pic") return DetectorKind::Pic;
  if (s == "glpic") return DetectorKind::GlPic;
  throw ConfigError("detector: must be one of rake, sic, pic, glpic");
}

Strategy parse_strategy(const std::string& s) {
  if (s == "none") return Strategy::None;
  if (s == "standard") return Strategy::Standard;
  if (s == "proposed") return Strategy::Proposed;
  if (s == "exhaustive") return Strategy::Exhaustive;
  throw ConfigError(
      "strategy: must be one of none, standard, proposed, exhaustive");
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig4-desk", "fig5a-desk",
                                              "fig5b-desk"};
  return names;
}

RunManifest parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Monte-Carlo simulator for the uplink of a cooperative DS-CDMA "
               "network (multiuser detection + multi-relay selection)"};
  app.set_config("--config", "", "flat 'key = value' configuration file");

  std::string preset_name, detector_s, strategy_s, snr_s, out_dir = "results",
                           format = "csv";
  int users = 0, relays = 0, chips = 0, paths = 0, trials = 0, symbols = 0,
      nq = -1, iters = 0;
  double dth = -1.0;
  std::uint64_t seed = 0;

  app.add_option("--preset", preset_name, "experiment preset")
      ->check(CLI::IsMember(preset_names()));
  app.add_option("--users", users, "number of users K");
  app.add_option("--relays", relays, "number of relays L");
  app.add_option("--chips", chips, "spreading code length N");
  app.add_option("--paths,--lp", paths, "propagation paths per link Lp");
  app.add_option("--snr", snr_s, "SNR dB list, comma separated");
  app.add_option("--trials", trials, "packets per sweep point");
  app.add_option("--symbols", symbols, "symbols per packet P");
  app.add_option("--detector", detector_s, "detector: rake, sic, pic, glpic");
  app.add_option("--strategy", strategy_s,
                 "relay selection: none, standard, proposed, exhaustive");
  app.add_option("--dth", dth, "reliability threshold d_th");
  app.add_option("--nq", nq, "re-examined unreliable users n_q");
  app.add_option("--iters", iters, "PIC iterations");
  app.add_option("--seed", seed, "master seed (env fallback CDMASIM_SEED)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json", "plot", "all"}));

  std::vector<std::string> argv_strings = args;
  std::vector<const char*> argv;
  argv.push_back("cdmasim");
  for (const auto& a : argv_strings) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  Preset preset = make_preset(preset_name);
  ExperimentConfig& cfg = preset.config;

  if (app.count("--users")) {
    if (cfg.sweep_axis == SweepAxis::Users)
      cfg.sweep_values = {static_cast<double>(users)};
    else
      cfg.users = users;
  }
  if (app.count("--relays")) cfg.relays = relays;
  if (app.count("--chips")) cfg.chips = chips;
  if (app.count("--paths")) cfg.paths = paths;
  if (app.count("--trials")) cfg.trials = trials;
  if (app.count("--symbols")) cfg.symbols_per_packet = symbols;
  if (app.count("--dth")) cfg.detector.reliability_threshold = dth;
  if (app.count("--nq")) cfg.detector.n_reexamined = nq;
  if (app.count("--iters")) cfg.detector.pic_iterations = iters;
  if (app.count("--detector")) cfg.detectors = {parse_detector(detector_s)};
  if (app.count("--strategy")) cfg.strategies = {parse_strategy(strategy_s)};
  if (app.count("--snr")) {
    const auto values = parse_number_list(snr_s, "snr");
    if (cfg.sweep_axis == SweepAxis::Users) {
      if (values.size() != 1)
        throw ConfigError("snr: a user-count sweep takes a single SNR value");
      cfg.fixed_snr_db = values.front();
    } else {
      cfg.sweep_values = values;
    }
  }

  if (app.count("--seed")) {
    cfg.master_seed = seed;
  } else if (const char* env = std::getenv("CDMASIM_SEED")) {
    try {
      cfg.master_seed = std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("seed: cannot parse CDMASIM_SEED value '" +
                        std::string(env) + "'");
    }
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  RunManifest manifest;
  manifest.preset = preset.name;
  manifest.timestamp = current_timestamp_utc();
  manifest.out_dir = out_dir;
  manifest.format = format;
  manifest.config = cfg;
  return manifest;
}

}  // namespace cdmasim
