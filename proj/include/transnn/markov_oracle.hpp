#pragma once

#include <cstddef>
#include <vector>

#include "transnn/binary_dynamics.hpp"
#include "transnn/matrix.hpp"
#include "transnn/network_model.hpp"

namespace transnn {

/// Largest n the exact oracle accepts. Memory is 2^n doubles and work per
/// step is 4^n, so n around 12 is the practical ceiling.
inline constexpr std::size_t kOracleMaxNodes = 20;

/// Probability vector over all 2^n configurations; bit i of the index is
/// node i.
class StateDistribution {
 public:
  StateDistribution() = default;
  /// Throws CapacityError above kOracleMaxNodes.
  explicit StateDistribution(std::size_t n);

  static StateDistribution point_mass(const BinaryState& x);
  /// Independent Bernoulli(p_i) per node.
  static StateDistribution product(const std::vector<double>& p);

  std::size_t nodes() const { return n_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t config) const { return probs_[config]; }
  double& operator[](std::size_t config) { return probs_[config]; }
  const std::vector<double>& probs() const { return probs_; }
  double* data() { return probs_.data(); }

  double total() const;
  /// Pr(X_i = 1) for every node.
  std::vector<double> marginals() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> probs_;
};

/// Pr(X_i(k+1) = 1 | X(k) = x).
double fire_probability(const Network& net, std::size_t k, const BinaryState& x, std::size_t i,
                        Transmission mode = Transmission::single);

/// Pr(X(k+1) = q | X(k) = x), the product of per-node fire probabilities.
double transition_probability(const Network& net, std::size_t k, const BinaryState& x,
                              const BinaryState& q, Transmission mode = Transmission::single);

/// One step of the exact chain. The transition kernel is never materialized:
/// each source configuration expands its product-Bernoulli row on the fly.
StateDistribution evolve_distribution(const Network& net, const StateDistribution& dist,
                                      std::size_t k, Transmission mode = Transmission::single);

/// Row k is the exact Pr(X_i(k) = 1) starting from the product of
/// Bernoulli(initial_p).
Matrix exact_marginals(const Network& net, std::size_t horizon,
                       Transmission mode = Transmission::single);

}  // namespace transnn
