#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cdmasim/rng.hpp"

namespace cdmasim {

// Per-tap amplitude factors 10^(dB/20) for a power profile given in dB.
std::vector<double> profile_amplitudes(const std::vector<double>& profile_db);

// One raw multipath draw before normalization: each tap has uniform [0,1)
// magnitude and uniform phase, scaled by its profile amplitude.
Eigen::VectorXcd sample_raw_taps(const std::vector<double>& profile_db, Rng& rng);

// Unit-norm multipath channel vector (block fading: redraw once per packet).
Eigen::VectorXcd sample_multipath_channel(const std::vector<double>& profile_db,
                                          Rng& rng);

}  // namespace cdmasim
