#include "transnn/markov_oracle.hpp"

#include <cmath>
#include <numeric>

#include "transnn/error.hpp"
#include "transnn/kernels.hpp"

namespace transnn {

StateDistribution::StateDistribution(std::size_t n) : n_(n) {
  if (n > kOracleMaxNodes)
    throw CapacityError("state space too large: " + std::to_string(n) + " nodes exceeds cap " +
                        std::to_string(kOracleMaxNodes));
  probs_.assign(std::size_t{1} << n, 0.0);
}

StateDistribution StateDistribution::point_mass(const BinaryState& x) {
  StateDistribution d(x.size());
  d.probs_[x.to_index()] = 1.0;
  return d;
}

StateDistribution StateDistribution::product(const std::vector<double>& p) {
  StateDistribution d(p.size());
  d.probs_[0] = 1.0;
  const auto& kern = kernels::active();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t half = std::size_t{1} << i;
    kern.split_scale(d.probs_.data(), d.probs_.data() + half, half, p[i]);
  }
  return d;
}

double StateDistribution::total() const { return std::accumulate(probs_.begin(), probs_.end(), 0.0); }

std::vector<double> StateDistribution::marginals() const {
  std::vector<double> m(n_, 0.0);
  for (std::size_t config = 0; config < probs_.size(); ++config) {
    const double p = probs_[config];
    if (p == 0.0) continue;
    for (std::size_t i = 0; i < n_; ++i)
      if ((config >> i) & 1u) m[i] += p;
  }
  return m;
}

namespace {

// Pr(no successful transmission over this edge | source fires).
double silent_given_firing(const InEdge& e, Transmission mode) {
  return mode == Transmission::population ? std::pow(1.0 - e.w, static_cast<double>(e.a))
                                          : 1.0 - e.w;
}

double fire_probability_unchecked(const Frame& frame, const BinaryState& x, std::size_t i,
                                  Transmission mode) {
  double no_excitation = 1.0;
  for (const InEdge& e : frame.excitatory_in[i])
    if (x[e.src]) no_excitation *= silent_given_firing(e, mode);
  double no_inhibition = 1.0;
  for (const InEdge& e : frame.inhibitory_in[i])
    if (x[e.src]) no_inhibition *= silent_given_firing(e, mode);
  return (1.0 - no_excitation) * no_inhibition;
}

void check_state(const Network& net, const BinaryState& x) {
  if (x.size() != net.n()) throw DomainError("state dimension does not match network");
}

}  // namespace

double fire_probability(const Network& net, std::size_t k, const BinaryState& x, std::size_t i,
                        Transmission mode) {
  check_state(net, x);
  if (i >= net.n()) throw DomainError("node index out of range");
  return fire_probability_unchecked(net.frame(k), x, i, mode);
}

double transition_probability(const Network& net, std::size_t k, const BinaryState& x,
                              const BinaryState& q, Transmission mode) {
  check_state(net, x);
  check_state(net, q);
  const Frame& frame = net.frame(k);
  double prob = 1.0;
  for (std::size_t i = 0; i < net.n(); ++i) {
    const double rho = fire_probability_unchecked(frame, x, i, mode);
    prob *= q[i] ? rho : 1.0 - rho;
  }
  return prob;
}

StateDistribution evolve_distribution(const Network& net, const StateDistribution& dist,
                                      std::size_t k, Transmission mode) {
  const std::size_t n = net.n();
  if (n > kOracleMaxNodes) throw CapacityError("state space too large");
  if (dist.nodes() != n) throw DomainError("distribution dimension does not match network");

  const Frame& frame = net.frame(k);
  const auto& kern = kernels::active();
  StateDistribution next(n);
  std::vector<double> row(dist.size());
  std::vector<double> rho(n);

  // Fixed reduction order over source configurations keeps results
  // reproducible.
  for (std::size_t config = 0; config < dist.size(); ++config) {
    const double weight = dist[config];
    if (weight == 0.0) continue;
    const BinaryState x = BinaryState::from_index(config, n);
    for (std::size_t i = 0; i < n; ++i) rho[i] = fire_probability_unchecked(frame, x, i, mode);

    row.assign(row.size(), 0.0);
    row[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t half = std::size_t{1} << i;
      kern.split_scale(row.data(), row.data() + half, half, rho[i]);
    }
    kern.axpy(weight, row.data(), next.data(), row.size());
  }
  return next;
}

Matrix exact_marginals(const Network& net, std::size_t horizon, Transmission mode) {
  if (net.n() > kOracleMaxNodes) throw CapacityError("state space too large");
  Matrix out(horizon + 1, net.n());
  StateDistribution dist = StateDistribution::product(net.spec().initial_p);
  for (std::size_t k = 0;; ++k) {
    const auto m = dist.marginals();
    for (std::size_t i = 0; i < net.n(); ++i) out(k, i) = m[i];
    if (k == horizon) break;
    dist = evolve_distribution(net, dist, k, mode);
  }
  return out;
}

}  // namespace transnn
