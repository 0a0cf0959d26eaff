#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace cdmasim {

// Destination-side channel state from which the stacked effective signatures
// of any relay subset can be assembled under the equal-power rule. Signature
// vectors are stored unscaled; subset-dependent amplitudes are applied when
// the columns are built.
struct SinrContext {
  std::vector<Eigen::VectorXcd> source_dest;              // per user, length M
  std::vector<std::vector<Eigen::VectorXcd>> relay_dest;  // [relay][user], length M
  double noise_variance = 0.0;

  int relays() const { return static_cast<int>(relay_dest.size()); }
  int users() const { return static_cast<int>(source_dest.size()); }
};

// Equal split of the unit destination-bound power budget across the direct
// link and the active relay links.
double link_amplitude(int active_relays);

// Audit hook: total destination-bound energy per user and symbol.
double destination_power_budget(int active_relays);

// 2M x K matrix whose column k stacks user k's direct and combined
// relay-phase signatures for the given subset (ascending relay indices).
Eigen::MatrixXcd stacked_columns(const SinrContext& ctx,
                                 const std::vector<int>& relay_set);

// Matched-filter output SINR for one user under a relay subset: desired
// signal power over cross-correlation interference plus noise. Returns 0 for
// a user with a zero effective column.
double sinr_for_user(int user, const std::vector<int>& relay_set,
                     const SinrContext& ctx);

// Worst-user SINR of the subset, the selection criterion.
double sinr_for_set(const std::vector<int>& relay_set, const SinrContext& ctx);

struct RelaySet {
  std::vector<int> members;       // ascending relay indices
  double sinr = 0.0;              // min-user SINR, linear
  std::uint64_t evaluations = 0;  // subset SINR evaluations spent
};

// All 2^L - 1 nonempty subsets; ties prefer fewer relays, then the
// lexicographically smaller member list. Throws when L exceeds the cap (12).
RelaySet exhaustive_select(const SinrContext& ctx);

// Stage-wise pruning of the weakest relay-destination link: remove the
// remaining relay with the smallest link power while that improves the
// worst-user SINR. link_powers[l] is the summed squared channel norm of relay
// l's destination links.
RelaySet standard_greedy_select(const SinrContext& ctx,
                                const std::vector<double>& link_powers);

// Stage-wise search that tries dropping every remaining relay in turn and
// keeps the best drop while it improves the worst-user SINR. At most
// L(L+1)/2 subset evaluations.
RelaySet proposed_greedy_select(const SinrContext& ctx);

enum class Strategy { None, Standard, Proposed, Exhaustive };

std::string to_string(Strategy s);

// Runs the chosen strategy; None returns the full set without evaluations.
RelaySet select_relays(Strategy strategy, const SinrContext& ctx,
                       const std::vector<double>& link_powers);

}  // namespace cdmasim
