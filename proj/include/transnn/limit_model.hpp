#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "transnn/matrix.hpp"
#include "transnn/network_model.hpp"

namespace transnn {

/// State of the infinite-neurotransmitter model. `o_bar` stays finite for
/// finite rates.
struct LimitState {
  std::vector<double> s_bar;
  std::vector<double> o_bar;
};

/// e^{-o} (1 - e^{-s}), clamped to [0, 1].
double sigma(double s, double o);

/// phi(s, o) = [sigma(s_i, o_i)]_i.
std::vector<double> phi(const LimitState& state);

/// [s'; o'] = [B_E ⊙ Λ; B_I ⊙ Λ] phi(s, o).
LimitState limit_info_step(const Network& net, std::size_t k, const LimitState& state);

/// p' = (1 - e^{-(B_E ⊙ Λ) p}) ⊙ e^{-(B_I ⊙ Λ) p}.
std::vector<double> limit_prob_step(const Network& net, std::size_t k, const std::vector<double>& p);

/// o(0) = 0, s_i(0) = -log(1 - p_i(0)).
LimitState initial_limit_state(const std::vector<double>& p0);

/// |(1 - λp/a)^a - e^{-λp}|. Throws DomainError if λp > a.
double poisson_gap(std::int64_t a, double lambda, double p);

/// Rows 0..horizon of the limit_prob_step trajectory from initial_p.
Matrix limit_prob_trajectory(const Network& net, std::size_t horizon);

struct LimitTrajectory {
  Matrix s_bar;
  Matrix o_bar;
  Matrix p;  ///< sigma image of each state
};

LimitTrajectory limit_info_trajectory(const Network& net, std::size_t horizon);

}  // namespace transnn
