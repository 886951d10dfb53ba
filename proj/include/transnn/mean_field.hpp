#pragma once

#include <cstddef>
#include <vector>

#include "transnn/binary_dynamics.hpp"
#include "transnn/matrix.hpp"
#include "transnn/network_model.hpp"

namespace transnn {

/// Shannon-information state of every node. `o` is authoritative; `pi`
/// caches exp(-o) so the step does not round-trip through log/exp.
struct InfoState {
  std::vector<double> s;   ///< in [0, +inf]
  std::vector<double> o;   ///< in [0, +inf]
  std::vector<double> pi;  ///< exp(-o), probability of no inhibition

  static InfoState from_so(std::vector<double> s, std::vector<double> o);
};

struct ProbabilityPair {
  std::vector<double> p;
  std::vector<double> pi;
};

/// Tuneable log-sigmoid -log(1 - w + w e^{-x}) for w in [0,1], x in [0, +inf].
/// Evaluated as -log1p(w * expm1(-x)); psi(w, +inf) = -log(1 - w).
double tlogsigmoid(double w, double x);

/// Mean-field firing probabilities one step ahead.
std::vector<double> prob_step(const Network& net, std::size_t k, const std::vector<double>& p,
                              Transmission mode = Transmission::single);

/// Probability of no effective inhibition at step k+1 given p(k).
std::vector<double> compute_pi(const Network& net, std::size_t k, const std::vector<double>& p,
                               Transmission mode = Transmission::single);

/// Default feasibility slack for p <= pi.
inline constexpr double kFeasibilitySlack = 1e-12;

/// (p, pi) -> (s, o). Throws DomainError("infeasible probability pair") when
/// p exceeds pi by more than `slack`. When pi = 0, s = 0.
InfoState to_info_state(const std::vector<double>& p, const std::vector<double>& pi,
                        double slack = kFeasibilitySlack);

/// (s, o) -> (p, pi) with pi = e^{-o}, p = e^{-o} (1 - e^{-s}).
ProbabilityPair from_info_state(const InfoState& state);

/// s_i' = sum_{j in E_i} a_ij psi(w_ij pi_j, s_j), and likewise o_i' over
/// inhibitory in-edges. Single transmission uses a = 1.
InfoState info_step(const Network& net, std::size_t k, const InfoState& state,
                    Transmission mode = Transmission::single);

/// o(0) = 0, s_i(0) = -log(1 - p_i(0)).
InfoState initial_info_state(const std::vector<double>& p0);

/// Rows 0..horizon of the prob_step trajectory from initial_p.
Matrix prob_trajectory(const Network& net, std::size_t horizon,
                       Transmission mode = Transmission::single);

struct InfoTrajectory {
  Matrix s;
  Matrix o;
  Matrix p;  ///< recovered firing probabilities
};

InfoTrajectory info_trajectory(const Network& net, std::size_t horizon,
                               Transmission mode = Transmission::single);

}  // namespace transnn
