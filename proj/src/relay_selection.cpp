#include "cdmasim/relay_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cdmasim {

namespace {
constexpr int kExhaustiveRelayCap = 12;

// Worst-user SINR from a prebuilt column set; bumps the caller's counter.
double evaluate_min_sinr(const SinrContext& ctx, const std::vector<int>& relay_set,
                         std::uint64_t& evaluations) {
  ++evaluations;
  return sinr_for_set(relay_set, ctx);
}

// Tie order: higher SINR, then fewer members, then lexicographically smaller.
bool better(const std::vector<int>& a_members, double a_sinr,
            const std::vector<int>& b_members, double b_sinr) {
  if (a_sinr != b_sinr) return a_sinr > b_sinr;
  if (a_members.size() != b_members.size())
    return a_members.size() < b_members.size();
  return std::lexicographical_compare(a_members.begin(), a_members.end(),
                                      b_members.begin(), b_members.end());
}

std::vector<int> full_set(int relays) {
  std::vector<int> all(relays);
  std::iota(all.begin(), all.end(), 0);
  return all;
}
}  // namespace

double link_amplitude(int active_relays) {
  return 1.0 / std::sqrt(1.0 + static_cast<double>(active_relays));
}

double destination_power_budget(int active_relays) {
  const double a = link_amplitude(active_relays);
  return a * a * (1.0 + static_cast<double>(active_relays));
}

Eigen::MatrixXcd stacked_columns(const SinrContext& ctx,
                                 const std::vector<int>& relay_set) {
  const int k_users = ctx.users();
  if (k_users == 0) throw std::invalid_argument("stacked_columns: no users");
  const Eigen::Index m = ctx.source_dest.front().size();
  const double amplitude = link_amplitude(static_cast<int>(relay_set.size()));

  Eigen::MatrixXcd h(2 * m, k_users);
  for (int k = 0; k < k_users; ++k) {
    h.col(k).head(m) = amplitude * ctx.source_dest[k];
    Eigen::VectorXcd relayed = Eigen::VectorXcd::Zero(m);
    for (int l : relay_set) relayed += ctx.relay_dest[l][k];
    h.col(k).tail(m) = amplitude * relayed;
  }
  return h;
}

namespace {
// Shared core so per-user and per-set evaluation use identical arithmetic.
double sinr_from_columns(const Eigen::MatrixXcd& h, int user,
                         double noise_variance) {
  const int k_users = static_cast<int>(h.cols());
  const double energy = h.col(user).squaredNorm();
  if (energy <= 0.0) return 0.0;
  double interference = 0.0;
  for (int k = 0; k < k_users; ++k) {
    if (k == user) continue;
    interference += std::norm(h.col(k).dot(h.col(user)));
  }
  return energy * energy / (interference + noise_variance * energy);
}
}  // namespace

double sinr_for_user(int user, const std::vector<int>& relay_set,
                     const SinrContext& ctx) {
  if (user < 0 || user >= ctx.users())
    throw std::invalid_argument("sinr_for_user: user index out of range");
  return sinr_from_columns(stacked_columns(ctx, relay_set), user,
                           ctx.noise_variance);
}

double sinr_for_set(const std::vector<int>& relay_set, const SinrContext& ctx) {
  const Eigen::MatrixXcd h = stacked_columns(ctx, relay_set);
  double worst = std::numeric_limits<double>::infinity();
  for (int q = 0; q < ctx.users(); ++q)
    worst = std::min(worst, sinr_from_columns(h, q, ctx.noise_variance));
  return worst;
}

RelaySet exhaustive_select(const SinrContext& ctx) {
  const int n_relays = ctx.relays();
  if (n_relays < 1) throw std::invalid_argument("relays: must be >= 1");
  if (n_relays > kExhaustiveRelayCap)
    throw std::invalid_argument("relays: exhaustive search capped at " +
                                std::to_string(kExhaustiveRelayCap));

  RelaySet best;
  bool have_best = false;
  for (std::uint32_t mask = 1; mask < (1u << n_relays); ++mask) {
    std::vector<int> members;
    for (int l = 0; l < n_relays; ++l)
      if (mask & (1u << l)) members.push_back(l);
    const double sinr = evaluate_min_sinr(ctx, members, best.evaluations);
    if (!have_best || better(members, sinr, best.members, best.sinr)) {
      best.members = std::move(members);
      best.sinr = sinr;
      have_best = true;
    }
  }
  return best;
}

RelaySet standard_greedy_select(const SinrContext& ctx,
                                const std::vector<double>& link_powers) {
  const int n_relays = ctx.relays();
  if (static_cast<int>(link_powers.size()) != n_relays)
    throw std::invalid_argument("standard_greedy_select: link power count");

  RelaySet result;
  result.members = full_set(n_relays);
  result.sinr = evaluate_min_sinr(ctx, result.members, result.evaluations);

  while (result.members.size() > 1) {
    // Weakest remaining relay-destination link; ties keep the lowest index.
    const auto weakest = *std::min_element(
        result.members.begin(), result.members.end(),
        [&](int a, int b) { return link_powers[a] < link_powers[b]; });
    std::vector<int> pruned;
    for (int l : result.members)
      if (l != weakest) pruned.push_back(l);

    const double sinr = evaluate_min_sinr(ctx, pruned, result.evaluations);
    if (sinr > result.sinr) {
      result.members = std::move(pruned);
      result.sinr = sinr;
    } else {
      break;
    }
  }
  return result;
}

RelaySet proposed_greedy_select(const SinrContext& ctx) {
  const int n_relays = ctx.relays();
  if (n_relays < 1) throw std::invalid_argument("relays: must be >= 1");

  RelaySet result;
  result.members = full_set(n_relays);
  result.sinr = evaluate_min_sinr(ctx, result.members, result.evaluations);

  while (result.members.size() > 1) {
    // Drop each remaining relay in turn and keep the best resulting set.
    std::vector<int> stage_members;
    double stage_sinr = 0.0;
    bool have_stage = false;
    for (std::size_t drop = 0; drop < result.members.size(); ++drop) {
      std::vector<int> candidate;
      for (std::size_t i = 0; i < result.members.size(); ++i)
        if (i != drop) candidate.push_back(result.members[i]);
      const double sinr = evaluate_min_sinr(ctx, candidate, result.evaluations);
      if (!have_stage || better(candidate, sinr, stage_members, stage_sinr)) {
        stage_members = std::move(candidate);
        stage_sinr = sinr;
        have_stage = true;
      }
    }
    if (stage_sinr > result.sinr) {
      result.members = std::move(stage_members);
      result.sinr = stage_sinr;
    } else {
      break;
    }
  }
  return result;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::None: return "none";
    case Strategy::Standard: return "standard";
    case Strategy::Proposed: return "proposed";
    case Strategy::Exhaustive: return "exhaustive";
  }
  return "?";
}

RelaySet select_relays(Strategy strategy, const SinrContext& ctx,
                       const std::vector<double>& link_powers) {
  switch (strategy) {
    case Strategy::None: {
      RelaySet all;
      all.members = full_set(ctx.relays());
      all.sinr = sinr_for_set(all.members, ctx);
      all.evaluations = 0;
      return all;
    }
    case Strategy::Standard: return standard_greedy_select(ctx, link_powers);
    case Strategy::Proposed: return proposed_greedy_select(ctx);
    case Strategy::Exhaustive: return exhaustive_select(ctx);
  }
  throw std::invalid_argument("select_relays: unknown strategy");
}

}  // namespace cdmasim
