#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cdmasim/rng.hpp"

namespace cdmasim {

// Effective signature a * S * h: the column a receiver correlates against.
Eigen::VectorXcd effective_signature(const Eigen::MatrixXd& spreading,
                                     const Eigen::VectorXcd& taps,
                                     double amplitude);

// sum_k signature_k * symbol_k plus i.i.d. complex Gaussian noise of variance
// noise_variance per sample.
Eigen::VectorXcd synthesize_received(const std::vector<Eigen::VectorXcd>& signatures,
                                     const Eigen::VectorXcd& symbols,
                                     double noise_variance, Rng& rng);

// Two-phase destination observation: [direct; relayed].
Eigen::VectorXcd stack_received(const Eigen::VectorXcd& y_direct,
                                const Eigen::VectorXcd& y_relayed);

}  // namespace cdmasim
