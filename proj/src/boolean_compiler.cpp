#include "transnn/boolean_compiler.hpp"

#include <bit>
#include <map>

#include "transnn/binary_dynamics.hpp"
#include "transnn/error.hpp"

namespace transnn {

TruthTable::TruthTable(std::vector<std::uint8_t> outputs) : outputs_(std::move(outputs)) {
  if (outputs_.size() < 2 || !std::has_single_bit(outputs_.size()))
    throw DomainError("truth table length must be 2^m with m >= 1");
  arity_ = static_cast<std::size_t>(std::countr_zero(outputs_.size()));
  if (arity_ > kMaxCompileArity)
    throw CapacityError("truth table has " + std::to_string(arity_) + " inputs; cap is " +
                        std::to_string(kMaxCompileArity));
  for (auto b : outputs_)
    if (b > 1) throw DomainError("truth table entries must be 0 or 1");
}

TruthTable TruthTable::parse(std::string_view bits) {
  std::vector<std::uint8_t> out;
  out.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("truth table must contain only '0' and '1'");
    out.push_back(c == '1' ? 1 : 0);
  }
  return TruthTable(std::move(out));
}

std::string TruthTable::to_string() const {
  std::string s;
  for (auto b : outputs_) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<bool> TruthTable::row_inputs(std::size_t row, std::size_t arity) {
  std::vector<bool> bits(arity);
  for (std::size_t t = 0; t < arity; ++t) bits[t] = (row >> (arity - 1 - t)) & 1u;
  return bits;
}

namespace {

class Builder {
 public:
  std::size_t add_node() { return n_++; }
  void excite(std::size_t src, std::size_t dst) { add(src, dst, EdgeType::excitatory); }
  void inhibit(std::size_t src, std::size_t dst) { add(src, dst, EdgeType::inhibitory); }

  std::size_t nor(std::size_t constant, const std::vector<std::size_t>& operands) {
    const std::size_t g = add_node();
    excite(constant, g);
    for (std::size_t op : operands) inhibit(op, g);
    return g;
  }

  NetworkSpec finish(std::size_t constant, std::size_t latency) {
    NetworkSpec spec;
    spec.n = n_;
    spec.horizon = latency;
    spec.initial_p.assign(n_, 0.0);
    spec.initial_p[constant] = 1.0;
    spec.frames.push_back(FrameSpec{std::move(edges_)});
    return spec;
  }

 private:
  void add(std::size_t src, std::size_t dst, EdgeType type) {
    edges_.push_back(EdgeSpec{dst, src, type, 1.0, 1, 1.0});
  }

  std::size_t n_ = 0;
  std::vector<EdgeSpec> edges_;
};

}  // namespace

LogicNetwork nor_gate() {
  Builder b;
  const std::size_t in_a = b.add_node();
  const std::size_t in_b = b.add_node();
  const std::size_t constant = b.add_node();
  b.excite(constant, constant);
  const std::size_t out = b.nor(constant, {in_a, in_b});
  return {b.finish(constant, 1), {in_a, in_b}, out, constant, 1};
}

LogicNetwork compile(const TruthTable& table) {
  const std::size_t m = table.arity();
  Builder b;
  std::vector<std::size_t> inputs;
  for (std::size_t t = 0; t < m; ++t) inputs.push_back(b.add_node());
  const std::size_t constant = b.add_node();
  b.excite(constant, constant);

  // Level 1: inverted literal (NOR of one input) or delayed copy.
  std::map<std::size_t, std::size_t> inverted, delayed;
  auto inverted_of = [&](std::size_t t) {
    auto [it, fresh] = inverted.try_emplace(t, 0);
    if (fresh) it->second = b.nor(constant, {inputs[t]});
    return it->second;
  };
  auto delayed_of = [&](std::size_t t) {
    auto [it, fresh] = delayed.try_emplace(t, 0);
    if (fresh) {
      it->second = b.add_node();
      b.excite(inputs[t], it->second);
    }
    return it->second;
  };

  // Level 2: each minterm is the NOR of its complemented literals.
  std::vector<std::size_t> minterms;
  for (std::size_t row = 0; row < table.rows(); ++row) {
    if (!table(row)) continue;
    const auto bits = TruthTable::row_inputs(row, m);
    std::vector<std::size_t> operands;
    for (std::size_t t = 0; t < m; ++t) operands.push_back(bits[t] ? inverted_of(t) : delayed_of(t));
    minterms.push_back(b.nor(constant, operands));
  }

  // Levels 3 and 4: OR of minterms as NOT(NOR(...)).
  const std::size_t collect = b.nor(constant, minterms);
  const std::size_t out = b.nor(constant, {collect});
  constexpr std::size_t kLatency = 4;
  return {b.finish(constant, kLatency), inputs, out, constant, kLatency};
}

namespace {

bool evaluate_on(const Network& net, const LogicNetwork& logic, const std::vector<bool>& inputs) {
  if (inputs.size() != logic.input_nodes.size())
    throw DomainError("expected " + std::to_string(logic.input_nodes.size()) + " inputs, got " +
                      std::to_string(inputs.size()));
  BinaryState state(net.n());
  state.set(logic.constant_node, true);
  for (std::size_t t = 0; t < inputs.size(); ++t) state.set(logic.input_nodes[t], inputs[t]);
  // All transmissions have w = 1, so every draw succeeds regardless of stream.
  const TrialStream rng(0, 0);
  for (std::size_t k = 0; k < logic.latency; ++k) {
    state = sample_step(net, k, state, rng);
    for (std::size_t t = 0; t < inputs.size(); ++t) state.set(logic.input_nodes[t], inputs[t]);
  }
  return state[logic.output_node];
}

}  // namespace

bool evaluate(const LogicNetwork& logic, const std::vector<bool>& inputs) {
  const Network net(logic.spec);
  return evaluate_on(net, logic, inputs);
}

TruthTable evaluate_all(const LogicNetwork& logic) {
  const Network net(logic.spec);
  const std::size_t m = logic.input_nodes.size();
  std::vector<std::uint8_t> out(std::size_t{1} << m);
  for (std::size_t row = 0; row < out.size(); ++row)
    out[row] = evaluate_on(net, logic, TruthTable::row_inputs(row, m)) ? 1 : 0;
  return TruthTable(std::move(out));
}

std::vector<std::size_t> input_path_lengths(const LogicNetwork& logic) {
  const std::size_t n = logic.spec.n;
  std::vector<std::vector<std::size_t>> successors(n);
  for (const auto& e : frame_at(logic.spec, 0).edges)
    if (e.src != logic.constant_node) successors[e.src].push_back(e.dst);

  std::vector<std::size_t> lengths;
  // Depth-first enumeration; the synthesized graphs are layered and acyclic.
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t in : logic.input_nodes) stack.emplace_back(in, 0);
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    if (node == logic.output_node) {
      lengths.push_back(depth);
      continue;
    }
    if (depth > n) throw Error("cycle reachable from an input");
    for (std::size_t next : successors[node]) stack.emplace_back(next, depth + 1);
  }
  return lengths;
}

}  // namespace transnn
