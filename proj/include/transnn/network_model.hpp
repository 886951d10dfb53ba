#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "transnn/matrix.hpp"

namespace transnn {

enum class EdgeType { excitatory, inhibitory };

std::string to_string(EdgeType type);

/// A directed synaptic connection src -> dst with its per-step parameters.
/// Node indices are zero-based in memory.
struct EdgeSpec {
  std::size_t dst = 0;
  std::size_t src = 0;
  EdgeType type = EdgeType::excitatory;
  double w = 0.0;       ///< per-transmission success probability
  std::int64_t a = 1;   ///< neurotransmitter count
  double lambda = 0.0;  ///< Poisson rate

  bool operator==(const EdgeSpec&) const = default;
};

/// Parameters and edges in effect for one step.
struct FrameSpec {
  std::vector<EdgeSpec> edges;

  bool operator==(const FrameSpec&) const = default;
};

/// Plain description of a network, possibly invalid. See validate().
struct NetworkSpec {
  std::size_t n = 0;
  std::size_t horizon = 0;
  std::vector<double> initial_p;
  std::vector<FrameSpec> frames;
  /// When set, every edge must satisfy lambda == w * a exactly.
  bool a9_linked = false;

  bool operator==(const NetworkSpec&) const = default;
};

/// Edge sets of one step; pairs are (dst, src).
struct Topology {
  std::size_t n = 0;
  std::set<std::pair<std::size_t, std::size_t>> excitatory;
  std::set<std::pair<std::size_t, std::size_t>> inhibitory;
};

Topology topology_of(const FrameSpec& frame, std::size_t n);

struct Violation {
  std::string code;     ///< stable machine-readable tag
  std::string message;  ///< human-readable, includes coordinates
  std::size_t frame = 0;
  std::size_t dst = 0;  ///< zero-based; meaningful for edge violations
  std::size_t src = 0;

  bool operator==(const Violation&) const = default;
};

/// Every invariant violation of `spec`; empty iff the spec is valid.
std::vector<Violation> validate(const NetworkSpec& spec);

/// Frame k with hold-last semantics. Throws SpecError on an empty schedule.
const FrameSpec& frame_at(const NetworkSpec& spec, std::size_t k);

/// An incoming edge as seen from its target node.
struct InEdge {
  std::size_t src = 0;
  double w = 0.0;
  std::int64_t a = 1;
  double lambda = 0.0;
};

/// Dense per-step view: masks, parameter matrices (entry (i, j) is j -> i),
/// masked products and per-node incoming edge lists sorted by source.
struct Frame {
  std::size_t n = 0;
  Matrix excitatory_mask;  ///< B_E
  Matrix inhibitory_mask;  ///< B_I
  Matrix w;
  Matrix a;  ///< zero off-edge
  Matrix lambda;
  Matrix excitatory_rate;  ///< B_E ⊙ Λ
  Matrix inhibitory_rate;  ///< B_I ⊙ Λ
  Matrix stacked_rate;     ///< [B_E ⊙ Λ; B_I ⊙ Λ], 2n × n
  Matrix excitatory_mean;  ///< B_E ⊙ A ⊙ Ω
  Matrix inhibitory_mean;  ///< B_I ⊙ A ⊙ Ω
  std::vector<std::vector<InEdge>> excitatory_in;
  std::vector<std::vector<InEdge>> inhibitory_in;

  static Frame build(const FrameSpec& spec, std::size_t n);
};

/// A validated, immutable network with dense frames materialized once.
class Network {
 public:
  /// Throws SpecError listing the violations if `spec` is invalid.
  explicit Network(NetworkSpec spec);

  std::size_t n() const { return spec_.n; }
  std::size_t horizon() const { return spec_.horizon; }
  const NetworkSpec& spec() const { return spec_; }
  std::size_t frame_count() const { return frames_.size(); }

  /// Frame k with hold-last semantics.
  const Frame& frame(std::size_t k) const {
    return frames_[k < frames_.size() ? k : frames_.size() - 1];
  }

  /// True when every frame is identical (a single frame counts).
  bool is_constant() const;

 private:
  NetworkSpec spec_;
  std::vector<Frame> frames_;
};

/// Spec with every edge rescaled to count `a` and w = lambda / a, keeping
/// lambda = w * a exact, with a9_linked set.
NetworkSpec with_uniform_population(const NetworkSpec& spec, std::int64_t a);

}  // namespace transnn
