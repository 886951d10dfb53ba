#include "transnn/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "transnn/error.hpp"
#include "transnn/kernels.hpp"
#include "transnn/mean_field.hpp"
#include "transnn/rng.hpp"

namespace transnn {

std::string to_string(Norm norm) { return norm == Norm::one ? "1" : "inf"; }

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::contraction_1: return "contraction-1";
    case CertificateKind::contraction_inf: return "contraction-inf";
    case CertificateKind::stability: return "stability";
    case CertificateKind::upper_bound_info: return "upper-bound-info";
    case CertificateKind::upper_bound_limit: return "upper-bound-limit";
  }
  return "unknown";
}

double induced_norm(const Matrix& m, Norm norm) {
  // Column sums of m are row sums of its transpose.
  const Matrix transposed = norm == Norm::one ? m.transposed() : Matrix{};
  const Matrix& source = norm == Norm::one ? transposed : m;
  std::vector<double> sums(source.rows());
  kernels::active().abs_row_sums(source.data(), source.rows(), source.cols(), sums.data());
  return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

CertificateReport contraction_certificate(const Network& net, Norm norm) {
  const Norm other = norm == Norm::one ? Norm::inf : Norm::one;
  CertificateReport report;
  report.kind = norm == Norm::one ? CertificateKind::contraction_1 : CertificateKind::contraction_inf;
  std::vector<double> per_frame;
  double companion = 0.0;
  for (std::size_t f = 0; f < net.frame_count(); ++f) {
    const Matrix& stacked = net.frame(f).stacked_rate;
    per_frame.push_back(induced_norm(stacked, norm));
    companion = std::max(companion, induced_norm(stacked, other));
  }
  report.witness = *std::max_element(per_frame.begin(), per_frame.end());
  report.holds = report.witness < 1.0;
  report.per_step = std::move(per_frame);
  report.companion_witness = companion;
  if (net.frame_count() > 1)
    report.note = "frames beyond the schedule repeat the last frame";
  return report;
}

namespace {

enum class PowerOutcome { converged, stalled, capped };

struct PowerResult {
  PowerOutcome outcome;
  double lower;
  double upper;
};

// Power iteration on (m + I) for a nonnegative square m, tracking the
// Collatz-Wielandt bracket min/max (m x)_i / x_i around the Perron root.
PowerResult power_iterate(const Matrix& m, const StabilityOptions& opt, bool allow_stall) {
  const std::size_t n = m.rows();
  const TrialStream rng(opt.seed, 0);
  std::vector<double> x(n), mx(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 0.5 + rng.uniform(0, static_cast<std::uint32_t>(i), 0);

  const auto& kern = kernels::active();
  double lower = 0.0, upper = std::numeric_limits<double>::infinity();
  double window_gap = std::numeric_limits<double>::infinity();
  constexpr std::size_t kWindow = 1000;

  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    kern.matvec(m.data(), n, n, x.data(), mx.data());
    lower = std::numeric_limits<double>::infinity();
    upper = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0.0) return {PowerOutcome::stalled, 0.0, upper};
      const double ratio = mx[i] / x[i];
      lower = std::min(lower, ratio);
      upper = std::max(upper, ratio);
      x[i] = mx[i] + x[i];
      scale = std::max(scale, x[i]);
    }
    for (double& v : x) v /= scale;

    const double gap = upper - lower;
    if (gap <= opt.tolerance * std::max(1.0, upper)) return {PowerOutcome::converged, lower, upper};
    if (it % kWindow == 0) {
      if (allow_stall && gap > 0.999 * window_gap) return {PowerOutcome::stalled, lower, upper};
      window_gap = gap;
    }
  }
  return {PowerOutcome::capped, lower, upper};
}

// Strongly connected components of the support graph (i -> j iff m(i,j) != 0).
std::vector<std::vector<std::size_t>> strong_components(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (m(v, w) == 0.0) continue;
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);
  return components;
}

[[noreturn]] void fail_to_converge(const PowerResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "power iteration did not converge; last bracket [" << r.lower << ", " << r.upper << "]";
  throw Error(os.str());
}

}  // namespace

double perron_radius(const Matrix& m, const StabilityOptions& options) {
  if (m.rows() != m.cols()) throw DomainError("spectral radius needs a square matrix");
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (double v : m.column(c))
      if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("perron_radius: matrix must be nonnegative and finite");
  if (m.rows() == 0) return 0.0;

  const PowerResult whole = power_iterate(m, options, true);
  if (whole.outcome == PowerOutcome::converged) return 0.5 * (whole.lower + whole.upper);

  double radius = 0.0;
  for (const auto& comp : strong_components(m)) {
    if (comp.size() == 1) {
      radius = std::max(radius, m(comp[0], comp[0]));
      continue;
    }
    Matrix block(comp.size(), comp.size());
    for (std::size_t c = 0; c < comp.size(); ++c)
      for (std::size_t r = 0; r < comp.size(); ++r) block(r, c) = m(comp[r], comp[c]);
    const PowerResult part = power_iterate(block, options, false);
    if (part.outcome != PowerOutcome::converged) fail_to_converge(part);
    radius = std::max(radius, 0.5 * (part.lower + part.upper));
  }
  return radius;
}

CertificateReport stability_certificate(const Network& net, const StabilityOptions& options) {
  if (!net.is_constant()) throw Error("stability certificate requires constant parameters");
  CertificateReport report;
  report.kind = CertificateKind::stability;
  report.witness = perron_radius(net.frame(0).excitatory_rate, options);
  report.holds = report.witness < 1.0;
  return report;
}

BoundTrajectory upper_bound_trajectory(const Network& net, const std::vector<double>& s0,
                                       std::size_t horizon, BoundModel model) {
  const std::size_t n = net.n();
  if (s0.size() != n) throw DomainError("initial information dimension does not match network");
  for (double v : s0) {
    if (!std::isfinite(v)) throw DomainError("bound requires finite initial information");
    if (v < 0.0) throw DomainError("initial information must be nonnegative");
  }
  BoundTrajectory out{Matrix(horizon + 1, n), Matrix(horizon + 1, n)};
  std::vector<double> z = s0;
  for (std::size_t k = 0;; ++k) {
    for (std::size_t i = 0; i < n; ++i) out.s(k, i) = z[i];
    if (k == horizon) break;
    const Frame& frame = net.frame(k);
    const bool limit = model == BoundModel::limit;
    const auto o_next = multiply(limit ? frame.inhibitory_rate : frame.inhibitory_mean, z);
    z = multiply(limit ? frame.excitatory_rate : frame.excitatory_mean, z);
    for (std::size_t i = 0; i < n; ++i) out.o(k + 1, i) = o_next[i];
  }
  return out;
}

double bound_violation(const Matrix& states, const Matrix& bound) {
  if (states.rows() != bound.rows() || states.cols() != bound.cols())
    throw DomainError("state and bound tables differ in shape");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < states.cols(); ++c) {
    for (std::size_t r = 0; r < states.rows(); ++r) {
      const double b = bound(r, c);
      if (b == std::numeric_limits<double>::infinity()) continue;
      worst = std::max(worst, states(r, c) - b);
    }
  }
  return std::isinf(worst) && worst < 0 ? 0.0 : worst;
}

CertificateReport upper_bound_certificate(const Network& net, std::size_t horizon, BoundModel model,
                                          double tolerance) {
  CertificateReport report;
  report.kind = model == BoundModel::limit ? CertificateKind::upper_bound_limit
                                           : CertificateKind::upper_bound_info;
  Matrix s, o;
  std::vector<double> s0;
  if (model == BoundModel::limit) {
    auto traj = limit_info_trajectory(net, horizon);
    s = std::move(traj.s_bar);
    o = std::move(traj.o_bar);
    s0 = initial_limit_state(net.spec().initial_p).s_bar;
  } else {
    auto traj = info_trajectory(net, horizon, Transmission::population);
    s = std::move(traj.s);
    o = std::move(traj.o);
    s0 = initial_info_state(net.spec().initial_p).s;
  }
  const BoundTrajectory bound = upper_bound_trajectory(net, s0, horizon, model);
  report.witness = std::max(bound_violation(s, bound.s), bound_violation(o, bound.o));
  report.holds = report.witness <= tolerance;
  return report;
}

Matrix phi_jacobian(const LimitState& state) {
  const std::size_t n = state.s_bar.size();
  Matrix d(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double decay = std::exp(-state.o_bar[i]);
    d(i, i) = decay * std::exp(-state.s_bar[i]);
    d(i, n + i) = decay * std::expm1(-state.s_bar[i]);
  }
  return d;
}

Matrix limit_jacobian(const Network& net, std::size_t k, const LimitState& state) {
  if (state.s_bar.size() != net.n() || state.o_bar.size() != net.n())
    throw DomainError("limit state dimension does not match network");
  return multiply(net.frame(k).stacked_rate, phi_jacobian(state));
}

}  // namespace transnn
