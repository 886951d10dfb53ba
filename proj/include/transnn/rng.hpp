#pragma once

#include <array>
#include <cstdint>

namespace transnn {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is
/// a pure function of (key, counter), so any draw can be addressed directly.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Counter operator()(Counter counter) const;

 private:
  Key key_;
};

/// Random stream owned by one Monte Carlo trial. Draws are addressed by
/// (step, target, source, reception index), never by draw count, so skipping
/// a draw does not shift any other.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint32_t trial) : gen_(seed), trial_(trial) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint32_t step, std::uint32_t slot, std::uint32_t index) const;

  /// Bernoulli(p); exactly deterministic for p = 0 and p = 1.
  bool bernoulli(double p, std::uint32_t step, std::uint32_t slot, std::uint32_t index) const {
    return uniform(step, slot, index) < p;
  }

  std::uint32_t trial() const { return trial_; }

  /// Step tag reserved for initial-state draws.
  static constexpr std::uint32_t initial_step = 0xFFFFFFFFu;

 private:
  Philox4x32 gen_;
  std::uint32_t trial_;
};

}  // namespace transnn
