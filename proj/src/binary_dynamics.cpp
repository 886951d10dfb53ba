#include "transnn/binary_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "transnn/error.hpp"

namespace transnn {

BinaryState::BinaryState(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw DomainError("binary state entries must be 0 or 1");
}

BinaryState BinaryState::from_index(std::uint64_t config, std::size_t n) {
  BinaryState s(n);
  for (std::size_t i = 0; i < n; ++i) s.bits_[i] = (config >> i) & 1u;
  return s;
}

std::uint64_t BinaryState::to_index() const {
  std::uint64_t config = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) config |= std::uint64_t{1} << i;
  return config;
}

bool BinaryState::any() const {
  return std::any_of(bits_.begin(), bits_.end(), [](auto b) { return b != 0; });
}

namespace {

std::uint32_t step_tag(std::size_t k) {
  if (k >= TrialStream::initial_step) throw DomainError("step index too large for draw tagging");
  return static_cast<std::uint32_t>(k);
}

// Whether the edge src -> dst delivers at least one successful transmission.
bool transmits(const InEdge& e, std::size_t dst, std::size_t n, std::uint32_t step,
               const TrialStream& rng, Transmission mode) {
  if (e.w <= 0.0) return false;
  const auto slot = static_cast<std::uint32_t>(dst * n + e.src);
  const std::int64_t receptions = mode == Transmission::population ? e.a : 1;
  for (std::int64_t l = 0; l < receptions; ++l)
    if (rng.bernoulli(e.w, step, slot, static_cast<std::uint32_t>(l))) return true;
  return false;
}

}  // namespace

BinaryState sample_step(const Network& net, std::size_t k, const BinaryState& state,
                        const TrialStream& rng, Transmission mode) {
  const std::size_t n = net.n();
  if (state.size() != n) throw DomainError("state dimension does not match network");
  if (n > std::numeric_limits<std::uint16_t>::max() + std::size_t{1})
    throw CapacityError("sampler supports at most 65536 nodes");
  const Frame& frame = net.frame(k);
  const std::uint32_t step = step_tag(k);

  BinaryState next(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool excited = false;
    for (const InEdge& e : frame.excitatory_in[i]) {
      if (state[e.src] && transmits(e, i, n, step, rng, mode)) {
        excited = true;
        break;
      }
    }
    if (!excited) continue;
    bool inhibited = false;
    for (const InEdge& e : frame.inhibitory_in[i]) {
      if (state[e.src] && transmits(e, i, n, step, rng, mode)) {
        inhibited = true;
        break;
      }
    }
    next.set(i, !inhibited);
  }
  return next;
}

std::vector<BinaryState> simulate_trajectory(const Network& net, std::size_t horizon,
                                             const BinaryState& initial, const TrialStream& rng,
                                             Transmission mode) {
  if (initial.size() != net.n()) throw DomainError("state dimension does not match network");
  std::vector<BinaryState> path;
  path.reserve(horizon + 1);
  path.push_back(initial);
  for (std::size_t k = 0; k < horizon; ++k) path.push_back(sample_step(net, k, path.back(), rng, mode));
  return path;
}

BinaryState sample_initial_state(const Network& net, const TrialStream& rng) {
  BinaryState s(net.n());
  for (std::size_t i = 0; i < net.n(); ++i)
    s.set(i, rng.bernoulli(net.spec().initial_p[i], TrialStream::initial_step,
                           static_cast<std::uint32_t>(i), 0));
  return s;
}

MarginalEstimate monte_carlo_marginals(const Network& net, std::size_t horizon,
                                       const MonteCarloOptions& options) {
  if (options.trials == 0) throw DomainError("trials must be positive");
  const std::size_t n = net.n();
  const std::size_t cells = (horizon + 1) * n;

  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, options.trials);

  // Integer counts keep the reduction exact regardless of the split.
  std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(cells, 0));
  auto run_range = [&](unsigned worker, std::uint32_t begin, std::uint32_t end) {
    auto& local = counts[worker];
    for (std::uint32_t t = begin; t < end; ++t) {
      const TrialStream rng(options.seed, t);
      BinaryState state = sample_initial_state(net, rng);
      for (std::size_t k = 0;; ++k) {
        for (std::size_t i = 0; i < n; ++i) local[k * n + i] += state[i] ? 1 : 0;
        if (k == horizon) break;
        state = sample_step(net, k, state, rng, options.mode);
      }
    }
  };

  if (workers == 1) {
    run_range(0, 0, options.trials);
  } else {
    std::vector<std::jthread> pool;
    const std::uint32_t chunk = (options.trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint32_t begin = std::min<std::uint64_t>(std::uint64_t{w} * chunk, options.trials);
      const std::uint32_t end = std::min<std::uint64_t>(std::uint64_t{begin} + chunk, options.trials);
      pool.emplace_back(run_range, w, begin, end);
    }
  }

  MarginalEstimate est;
  est.trials = options.trials;
  est.p_hat = Matrix(horizon + 1, n);
  est.std_error = Matrix(horizon + 1, n);
  const double trials = static_cast<double>(options.trials);
  for (std::size_t k = 0; k <= horizon; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t total = 0;
      for (const auto& local : counts) total += local[k * n + i];
      const double p = static_cast<double>(total) / trials;
      est.p_hat(k, i) = p;
      est.std_error(k, i) = std::sqrt(p * (1.0 - p) / trials);
    }
  }
  return est;
}

}  // namespace transnn
