#include "cdmasim/signal.hpp"

#include <stdexcept>

namespace cdmasim {

Eigen::VectorXcd effective_signature(const Eigen::MatrixXd& spreading,
                                     const Eigen::VectorXcd& taps,
                                     double amplitude) {
  if (spreading.cols() != taps.size())
    throw std::invalid_argument(
        "effective_signature: spreading columns != tap count");
  return amplitude * (spreading * taps);
}

Eigen::VectorXcd synthesize_received(const std::vector<Eigen::VectorXcd>& signatures,
                                     const Eigen::VectorXcd& symbols,
                                     double noise_variance, Rng& rng) {
  if (signatures.empty() ||
      static_cast<Eigen::Index>(signatures.size()) != symbols.size())
    throw std::invalid_argument(
        "synthesize_received: signature/symbol count mismatch");
  if (noise_variance < 0.0)
    throw std::invalid_argument("synthesize_received: negative noise variance");

  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(signatures.front().size());
  for (std::size_t k = 0; k < signatures.size(); ++k) {
    if (signatures[k].size() != y.size())
      throw std::invalid_argument("synthesize_received: signature length mismatch");
    y += signatures[k] * symbols[static_cast<Eigen::Index>(k)];
  }
  if (noise_variance > 0.0)
    for (Eigen::Index i = 0; i < y.size(); ++i)
      y[i] += rng.complex_gaussian(noise_variance);
  return y;
}

Eigen::VectorXcd stack_received(const Eigen::VectorXcd& y_direct,
                                const Eigen::VectorXcd& y_relayed) {
  if (y_direct.size() != y_relayed.size())
    throw std::invalid_argument("stack_received: phase length mismatch");
  Eigen::VectorXcd stacked(y_direct.size() + y_relayed.size());
  stacked << y_direct, y_relayed;
  return stacked;
}

}  // namespace cdmasim
