#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "transnn/matrix.hpp"
#include "transnn/network_model.hpp"
#include "transnn/rng.hpp"

namespace transnn {

/// Firing pattern X(k) in {0,1}^n.
class BinaryState {
 public:
  BinaryState() = default;
  explicit BinaryState(std::size_t n) : bits_(n, 0) {}
  /// Throws DomainError if any entry is not 0 or 1.
  explicit BinaryState(std::vector<std::uint8_t> bits);

  /// Bit i of `config` is node i.
  static BinaryState from_index(std::uint64_t config, std::size_t n);
  std::uint64_t to_index() const;

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  bool any() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const BinaryState&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Which transmission law is in effect.
enum class Transmission {
  single,     ///< one Bernoulli(w) transmission per edge
  population  ///< a independent Bernoulli(w) receptions per edge
};

/// One draw of the excitatory/inhibitory update. With Transmission::single
/// each edge draws W ~ Bernoulli(w); with Transmission::population each edge
/// draws `a` receptions. Draws are skipped for silent sources.
BinaryState sample_step(const Network& net, std::size_t k, const BinaryState& state,
                        const TrialStream& rng, Transmission mode = Transmission::single);

inline BinaryState sample_step_population(const Network& net, std::size_t k,
                                          const BinaryState& state, const TrialStream& rng) {
  return sample_step(net, k, state, rng, Transmission::population);
}

/// [initial, X(1), ..., X(horizon)]; step k -> k+1 uses frame k.
std::vector<BinaryState> simulate_trajectory(const Network& net, std::size_t horizon,
                                             const BinaryState& initial, const TrialStream& rng,
                                             Transmission mode = Transmission::single);

/// Initial state with node i firing with probability initial_p[i].
BinaryState sample_initial_state(const Network& net, const TrialStream& rng);

struct MarginalEstimate {
  Matrix p_hat;   ///< (horizon+1) × n
  Matrix std_error;  ///< sqrt(p_hat (1 - p_hat) / trials)
  std::uint64_t trials = 0;
};

struct MonteCarloOptions {
  std::uint64_t seed = 0;
  std::uint32_t trials = 1;
  Transmission mode = Transmission::single;
  /// 0 picks hardware concurrency. Results do not depend on this value.
  unsigned threads = 0;
};

/// Fraction of trials with X_i(k) = 1, each trial on its own stream
/// TrialStream(seed, trial) with initial states drawn from initial_p.
MarginalEstimate monte_carlo_marginals(const Network& net, std::size_t horizon,
                                       const MonteCarloOptions& options);

}  // namespace transnn
