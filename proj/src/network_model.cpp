#include "transnn/network_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "transnn/error.hpp"

namespace transnn {

std::string to_string(EdgeType type) {
  return type == EdgeType::excitatory ? "excitatory" : "inhibitory";
}

Topology topology_of(const FrameSpec& frame, std::size_t n) {
  Topology t;
  t.n = n;
  for (const auto& e : frame.edges) {
    auto& set = e.type == EdgeType::excitatory ? t.excitatory : t.inhibitory;
    set.emplace(e.dst, e.src);
  }
  return t;
}

namespace {

std::string edge_label(const EdgeSpec& e) {
  std::ostringstream os;
  os << "edge " << e.src + 1 << "->" << e.dst + 1;
  return os.str();
}

}  // namespace

std::vector<Violation> validate(const NetworkSpec& spec) {
  std::vector<Violation> out;
  auto report = [&](std::string code, std::string message, std::size_t frame = 0,
                    std::size_t dst = 0, std::size_t src = 0) {
    out.push_back({std::move(code), std::move(message), frame, dst, src});
  };

  if (spec.n == 0) report("node-count", "network must have at least one node");
  if (spec.initial_p.size() != spec.n) {
    report("initial-length", "initial_p has " + std::to_string(spec.initial_p.size()) +
                                 " entries, expected " + std::to_string(spec.n));
  }
  for (std::size_t i = 0; i < spec.initial_p.size(); ++i) {
    const double p = spec.initial_p[i];
    if (!(p >= 0.0 && p <= 1.0))
      report("initial-range", "initial_p of node " + std::to_string(i + 1) + " out of [0,1]", 0,
             i, i);
  }
  if (spec.frames.empty()) {
    report("no-frames", "no parameter frames");
  } else if (spec.frames.size() != 1 && spec.frames.size() < spec.horizon) {
    report("schedule-length", "schedule has " + std::to_string(spec.frames.size()) +
                                  " frames; need 1 or at least horizon " +
                                  std::to_string(spec.horizon));
  }

  for (std::size_t f = 0; f < spec.frames.size(); ++f) {
    std::map<std::pair<std::size_t, std::size_t>, unsigned> seen;  // bit 0 exc, bit 1 inh
    for (const auto& e : spec.frames[f].edges) {
      const std::string where = edge_label(e) + " in frame " + std::to_string(f);
      if (e.dst >= spec.n || e.src >= spec.n) {
        report("node-index", where + ": node index out of range", f, e.dst, e.src);
        continue;
      }
      const unsigned bit = e.type == EdgeType::excitatory ? 1u : 2u;
      auto& mask = seen[{e.dst, e.src}];
      if (mask & bit) {
        report("duplicate-edge", where + ": duplicate " + to_string(e.type) + " edge", f, e.dst,
               e.src);
      } else if (mask != 0) {
        report("edge-both-types", where + ": edge both excitatory and inhibitory", f, e.dst,
               e.src);
      }
      mask |= bit;
      if (!(e.w >= 0.0 && e.w <= 1.0))
        report("probability-range", where + ": probability out of range", f, e.dst, e.src);
      if (e.a < 1) report("count-range", where + ": neurotransmitter count below 1", f, e.dst, e.src);
      if (!(e.lambda >= 0.0 && std::isfinite(e.lambda)))
        report("rate-range", where + ": rate must be finite and nonnegative", f, e.dst, e.src);
      if (spec.a9_linked && e.lambda != e.w * static_cast<double>(e.a))
        report("a9-link", where + ": lambda differs from w * a", f, e.dst, e.src);
    }
  }
  return out;
}

const FrameSpec& frame_at(const NetworkSpec& spec, std::size_t k) {
  if (spec.frames.empty()) throw SpecError("no parameter frames");
  return spec.frames[std::min(k, spec.frames.size() - 1)];
}

Frame Frame::build(const FrameSpec& spec, std::size_t n) {
  Frame f;
  f.n = n;
  f.excitatory_mask = Matrix(n, n);
  f.inhibitory_mask = Matrix(n, n);
  f.w = Matrix(n, n);
  f.a = Matrix(n, n);
  f.lambda = Matrix(n, n);
  f.excitatory_in.resize(n);
  f.inhibitory_in.resize(n);
  for (const auto& e : spec.edges) {
    const bool exc = e.type == EdgeType::excitatory;
    (exc ? f.excitatory_mask : f.inhibitory_mask)(e.dst, e.src) = 1.0;
    f.w(e.dst, e.src) = e.w;
    f.a(e.dst, e.src) = static_cast<double>(e.a);
    f.lambda(e.dst, e.src) = e.lambda;
    (exc ? f.excitatory_in : f.inhibitory_in)[e.dst].push_back({e.src, e.w, e.a, e.lambda});
  }
  auto by_src = [](const InEdge& l, const InEdge& r) { return l.src < r.src; };
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(f.excitatory_in[i].begin(), f.excitatory_in[i].end(), by_src);
    std::sort(f.inhibitory_in[i].begin(), f.inhibitory_in[i].end(), by_src);
  }
  f.excitatory_rate = hadamard(f.excitatory_mask, f.lambda);
  f.inhibitory_rate = hadamard(f.inhibitory_mask, f.lambda);
  f.stacked_rate = vstack(f.excitatory_rate, f.inhibitory_rate);
  const Matrix mean = hadamard(f.a, f.w);
  f.excitatory_mean = hadamard(f.excitatory_mask, mean);
  f.inhibitory_mean = hadamard(f.inhibitory_mask, mean);
  return f;
}

Network::Network(NetworkSpec spec) : spec_(std::move(spec)) {
  const auto violations = validate(spec_);
  if (!violations.empty()) {
    std::string msg = "invalid network spec:";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw SpecError(msg);
  }
  frames_.reserve(spec_.frames.size());
  for (const auto& f : spec_.frames) frames_.push_back(Frame::build(f, spec_.n));
}

bool Network::is_constant() const {
  for (std::size_t k = 1; k < frames_.size(); ++k) {
    const Frame& a = frames_[0];
    const Frame& b = frames_[k];
    if (a.excitatory_mask != b.excitatory_mask || a.inhibitory_mask != b.inhibitory_mask ||
        a.w != b.w || a.a != b.a || a.lambda != b.lambda)
      return false;
  }
  return true;
}

NetworkSpec with_uniform_population(const NetworkSpec& spec, std::int64_t a) {
  NetworkSpec out = spec;
  out.a9_linked = true;
  for (auto& frame : out.frames) {
    for (auto& e : frame.edges) {
      e.a = a;
      e.w = e.lambda / static_cast<double>(a);
      e.lambda = e.w * static_cast<double>(a);
    }
  }
  return out;
}

}  // namespace transnn
