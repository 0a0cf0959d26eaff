#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cdmasim/rng.hpp"

namespace cdmasim {

// Unit-energy binary spreading sequence: N chips in {+1/sqrt(N), -1/sqrt(N)}.
struct SpreadingCode {
  Eigen::VectorXd chips;
  int user_id = 0;

  int length() const { return static_cast<int>(chips.size()); }
};

SpreadingCode random_code(int n_chips, int user_id, Rng& rng);

// Distinct random codes for n_users users; duplicate draws are redrawn.
std::vector<SpreadingCode> random_code_set(int n_users, int n_chips, Rng& rng);

// Banded convolution matrix whose column j is the code shifted down by j
// chips: rows M = N + paths - 1, one column per resolvable path.
// Requires 1 <= paths < N.
Eigen::MatrixXd build_spreading_matrix(const SpreadingCode& code, int paths);

}  // namespace cdmasim
