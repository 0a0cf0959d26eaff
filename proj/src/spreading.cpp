#include "cdmasim/spreading.hpp"

#include <cmath>
#include <stdexcept>

namespace cdmasim {

SpreadingCode random_code(int n_chips, int user_id, Rng& rng) {
  if (n_chips < 1) throw std::invalid_argument("chips: must be >= 1");
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_chips));
  Eigen::VectorXd chips(n_chips);
  for (int i = 0; i < n_chips; ++i)
    chips[i] = rng.uniform_int(2) == 0 ? amp : -amp;
  return SpreadingCode{std::move(chips), user_id};
}

std::vector<SpreadingCode> random_code_set(int n_users, int n_chips, Rng& rng) {
  std::vector<SpreadingCode> codes;
  codes.reserve(n_users);
  for (int k = 0; k < n_users; ++k) {
    for (;;) {
      SpreadingCode candidate = random_code(n_chips, k, rng);
      bool duplicate = false;
      for (const auto& existing : codes)
        if (existing.chips == candidate.chips) {
          duplicate = true;
          break;
        }
      if (!duplicate) {
        codes.push_back(std::move(candidate));
        break;
      }
    }
  }
  return codes;
}

Eigen::MatrixXd build_spreading_matrix(const SpreadingCode& code, int paths) {
  const int n = code.length();
  if (paths < 1) throw std::invalid_argument("paths: must be >= 1");
  if (paths > n)
    throw std::invalid_argument("paths: more paths than chips");
  const int rows = n + paths - 1;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(rows, paths);
  for (int j = 0; j < paths; ++j)
    s.col(j).segment(j, n) = code.chips;
  return s;
}

}  // namespace cdmasim
