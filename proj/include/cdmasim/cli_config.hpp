#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cdmasim/results_io.hpp"
#include "cdmasim/sim.hpp"

namespace cdmasim {

// Configuration rejected before any computation; the message names the field.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Help or version was requested; nothing to run.
struct HelpRequested {
  std::string text;
};

// Resolves flags > config file > CDMASIM_SEED env > preset defaults into a
// validated run plan. Known presets: fig4-desk, fig5a-desk, fig5b-desk.
RunManifest parse_config(const std::vector<std::string>& args);

const std::vector<std::string>& preset_names();

}  // namespace cdmasim
