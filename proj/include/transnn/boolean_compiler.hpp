#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "transnn/network_model.hpp"

namespace transnn {

/// A deterministic network (all w = 1, a = 1) computing a Boolean function.
/// Inputs are clamped externally; the constant node fires forever through an
/// excitatory self-loop.
struct LogicNetwork {
  NetworkSpec spec;
  std::vector<std::size_t> input_nodes;
  std::size_t output_node = 0;
  std::size_t constant_node = 0;
  std::size_t latency = 1;
};

/// Output column of a truth table over m inputs. Row r assigns input t the
/// bit (r >> (m - 1 - t)) & 1, so input 0 is the most significant.
class TruthTable {
 public:
  explicit TruthTable(std::vector<std::uint8_t> outputs);
  /// From a string of '0'/'1' of length 2^m, e.g. "0111" for OR.
  static TruthTable parse(std::string_view bits);

  std::size_t arity() const { return arity_; }
  std::size_t rows() const { return outputs_.size(); }
  bool operator()(std::size_t row) const { return outputs_[row] != 0; }
  std::string to_string() const;

  /// Bits of `row` in input order.
  static std::vector<bool> row_inputs(std::size_t row, std::size_t arity);

 private:
  std::size_t arity_ = 0;
  std::vector<std::uint8_t> outputs_;
};

inline constexpr std::size_t kMaxCompileArity = 8;

/// Constant-1 node excites C; A and B inhibit C. Nodes are A, B, const, C.
LogicNetwork nor_gate();

/// Sum-of-minterms synthesis into NOR motifs, four levels deep: literal
/// (inverter or delay), minterm NOR, collecting NOR, output inverter. Every
/// input-to-output path has length `latency`.
LogicNetwork compile(const TruthTable& table);

/// Output after `latency` steps with inputs clamped to `inputs`.
bool evaluate(const LogicNetwork& logic, const std::vector<bool>& inputs);

/// evaluate() over every row, building the network once.
TruthTable evaluate_all(const LogicNetwork& logic);

/// Lengths of all directed paths from any input to the output, ignoring
/// edges out of the constant node. Used to check retiming.
std::vector<std::size_t> input_path_lengths(const LogicNetwork& logic);

}  // namespace transnn
