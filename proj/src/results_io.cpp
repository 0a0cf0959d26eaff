#include "cdmasim/results_io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace cdmasim {

namespace {

using nlohmann::json;

std::string format_ber(double ber) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", ber);
  return buf;
}

std::ofstream open_or_throw(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write output file: " + path.string());
  return out;
}

DetectorKind detector_from_string(const std::string& s) {
  if (s == "rake") return DetectorKind::Rake;
  if (s == "sic") return DetectorKind::Sic;
  if (s == "pic") return DetectorKind::Pic;
  if (s == "glpic") return DetectorKind::GlPic;
  throw std::runtime_error("unknown detector label: " + s);
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "none") return Strategy::None;
  if (s == "standard") return Strategy::Standard;
  if (s == "proposed") return Strategy::Proposed;
  if (s == "exhaustive") return Strategy::Exhaustive;
  throw std::runtime_error("unknown strategy label: " + s);
}

json record_to_json(const BerRecord& r) {
  return json{{"sweep", r.sweep},
              {"detector", to_string(r.detector)},
              {"strategy", to_string(r.strategy)},
              {"errors", r.bit_errors},
              {"bits", r.bits},
              {"ber", r.ber},
              {"sinr_evals", r.sinr_evaluations}};
}

json config_to_json(const ExperimentConfig& c) {
  return json{
      {"users", c.users},
      {"relays", c.relays},
      {"chips", c.chips},
      {"paths", c.paths},
      {"symbols", c.symbols_per_packet},
      {"trials", c.trials},
      {"sweep_axis", c.sweep_axis == SweepAxis::SnrDb ? "snr_db" : "users"},
      {"sweep_values", c.sweep_values},
      {"fixed_snr_db", c.fixed_snr_db},
      {"detectors",
       [&] {
         json a = json::array();
         for (auto d : c.detectors) a.push_back(to_string(d));
         return a;
       }()},
      {"strategies",
       [&] {
         json a = json::array();
         for (auto s : c.strategies) a.push_back(to_string(s));
         return a;
       }()},
      {"dth", c.detector.reliability_threshold},
      {"nq", c.detector.n_reexamined},
      {"iters", c.detector.pic_iterations},
      {"modulation", to_string(c.detector.modulation)},
      {"profile_db", c.power_profile_db},
      {"seed", c.master_seed},
  };
}

json manifest_to_json(const RunManifest& m, bool with_timestamp) {
  json j{{"preset", m.preset},
         {"version", m.version},
         {"out_dir", m.out_dir},
         {"format", m.format},
         {"config", config_to_json(m.config)}};
  if (with_timestamp) j["timestamp"] = m.timestamp;
  return j;
}

}  // namespace

std::string current_timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void write_csv(const std::vector<BerRecord>& records,
               const std::filesystem::path& path) {
  auto out = open_or_throw(path);
  out << "sweep,detector,strategy,errors,bits,ber,sinr_evals\n";
  for (const auto& r : records) {
    char sweep[32];
    std::snprintf(sweep, sizeof(sweep), "%g", r.sweep);
    out << sweep << ',' << to_string(r.detector) << ',' << to_string(r.strategy)
        << ',' << r.bit_errors << ',' << r.bits << ',' << format_ber(r.ber)
        << ',' << r.sinr_evaluations << '\n';
  }
}

void write_results_json(const RunManifest& manifest,
                        const std::vector<BerRecord>& records,
                        const std::filesystem::path& path) {
  json j{{"manifest", manifest_to_json(manifest, false)},
         {"records", json::array()}};
  for (const auto& r : records) j["records"].push_back(record_to_json(r));
  auto out = open_or_throw(path);
  out << j.dump(2) << '\n';
}

void write_manifest_json(const RunManifest& manifest,
                         const std::filesystem::path& path) {
  auto out = open_or_throw(path);
  out << manifest_to_json(manifest, true).dump(2) << '\n';
}

std::vector<std::filesystem::path> write_plot_series(
    const std::vector<BerRecord>& records, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  // Keep the record order within each series; series appear in first-seen order.
  std::vector<std::pair<std::string, std::vector<const BerRecord*>>> series;
  for (const auto& r : records) {
    const std::string key = to_string(r.detector) + "_" + to_string(r.strategy);
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const auto& s) { return s.first == key; });
    if (it == series.end()) {
      series.push_back({key, {}});
      it = std::prev(series.end());
    }
    it->second.push_back(&r);
  }
  for (const auto& [key, rows] : series) {
    const auto path = dir / (key + ".dat");
    auto out = open_or_throw(path);
    out << "# sweep ber errors bits\n";
    for (const BerRecord* r : rows) {
      char sweep[32];
      std::snprintf(sweep, sizeof(sweep), "%g", r->sweep);
      out << sweep << ' ' << format_ber(r->ber) << ' ' << r->bit_errors << ' '
          << r->bits << '\n';
    }
    written.push_back(path);
  }
  return written;
}

std::vector<BerRecord> read_results_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read results file: " + path.string());
  json j;
  in >> j;
  std::vector<BerRecord> records;
  for (const auto& rj : j.at("records")) {
    BerRecord r;
    r.sweep = rj.at("sweep").get<double>();
    r.detector = detector_from_string(rj.at("detector").get<std::string>());
    r.strategy = strategy_from_string(rj.at("strategy").get<std::string>());
    r.bit_errors = rj.at("errors").get<std::uint64_t>();
    r.bits = rj.at("bits").get<std::uint64_t>();
    r.ber = rj.at("ber").get<double>();
    r.sinr_evaluations = rj.at("sinr_evals").get<std::uint64_t>();
    records.push_back(r);
  }
  return records;
}

}  // namespace cdmasim
