#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cdmasim/sim.hpp"

namespace cdmasim {

inline constexpr const char* kToolVersion = "cdmasim 0.1.0";

// Resolved run description, serialized alongside results. Re-running the
// same resolved configuration and seed reproduces the result files byte for
// byte (the timestamp is informational and kept out of results.json).
struct RunManifest {
  std::string preset;  // empty when fully flag-driven
  std::string version = kToolVersion;
  std::string timestamp;  // ISO 8601 UTC
  std::string out_dir;
  std::string format = "csv";
  ExperimentConfig config;
};

std::string current_timestamp_utc();

// results.csv: header sweep,detector,strategy,errors,bits,ber,sinr_evals.
void write_csv(const std::vector<BerRecord>& records,
               const std::filesystem::path& path);

// results.json: manifest (minus timestamp) plus all records.
void write_results_json(const RunManifest& manifest,
                        const std::vector<BerRecord>& records,
                        const std::filesystem::path& path);

// manifest.json: the manifest alone, including the timestamp.
void write_manifest_json(const RunManifest& manifest,
                         const std::filesystem::path& path);

// One whitespace-separated file per (detector, strategy) series for gnuplot:
// columns sweep, ber, errors, bits. Returns the paths written.
std::vector<std::filesystem::path> write_plot_series(
    const std::vector<BerRecord>& records, const std::filesystem::path& dir);

// Reads the records array back from results.json.
std::vector<BerRecord> read_results_json(const std::filesystem::path& path);

}  // namespace cdmasim
