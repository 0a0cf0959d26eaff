#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "cdmasim/cli_config.hpp"
#include "cdmasim/results_io.hpp"
#include "cdmasim/sim.hpp"

namespace {

void print_summary(const std::vector<cdmasim::BerRecord>& records) {
  std::printf("%10s %9s %11s %10s %12s %12s\n", "sweep", "detector", "strategy",
              "errors", "bits", "ber");
  for (const auto& r : records)
    std::printf("%10g %9s %11s %10llu %12llu %12.3e\n", r.sweep,
                cdmasim::to_string(r.detector).c_str(),
                cdmasim::to_string(r.strategy).c_str(),
                static_cast<unsigned long long>(r.bit_errors),
                static_cast<unsigned long long>(r.bits), r.ber);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cdmasim;

  RunManifest manifest;
  try {
    manifest = parse_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto records = run_experiment(manifest.config);
    print_summary(records);

    namespace fs = std::filesystem;
    const fs::path out_dir(manifest.out_dir);
    fs::create_directories(out_dir);
    write_manifest_json(manifest, out_dir / "manifest.json");
    const bool all = manifest.format == "all";
    if (all || manifest.format == "csv")
      write_csv(records, out_dir / "results.csv");
    if (all || manifest.format == "json")
      write_results_json(manifest, records, out_dir / "results.json");
    if (all || manifest.format == "plot") write_plot_series(records, out_dir);
    std::cout << "results written to " << out_dir.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
