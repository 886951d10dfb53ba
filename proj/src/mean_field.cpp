#include "transnn/mean_field.hpp"

#include <cmath>
#include <limits>

#include "transnn/error.hpp"

namespace transnn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_probabilities(const Network& net, const std::vector<double>& p) {
  if (p.size() != net.n()) throw DomainError("probability vector dimension does not match network");
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("probability out of [0,1]");
}

double weight(const InEdge& e, Transmission mode) {
  return mode == Transmission::population ? static_cast<double>(e.a) : 1.0;
}

// log of (1 - w p)^a. Products of these factors are kept in log space: forming
// 1 - prod directly loses all relative accuracy once w p is small.
double log_factor(const InEdge& e, double p, Transmission mode) {
  return weight(e, mode) * std::log1p(-e.w * p);
}

// Nonnegative zero for the s = 0 case so tables never print "-0".
double nonneg(double v) { return v == 0.0 ? 0.0 : v; }

}  // namespace

InfoState InfoState::from_so(std::vector<double> s, std::vector<double> o) {
  InfoState st{std::move(s), std::move(o), {}};
  st.pi.resize(st.o.size());
  for (std::size_t i = 0; i < st.o.size(); ++i) st.pi[i] = std::exp(-st.o[i]);
  return st;
}

double tlogsigmoid(double w, double x) {
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("tlogsigmoid: w outside [0,1]");
  if (!(x >= 0.0)) throw DomainError("tlogsigmoid: x must be nonnegative");
  const double t = w * std::expm1(-x);
  // Near t = -1 the sum 1 + t cancels; 1 - w is exact there since w >= 0.5.
  if (t > -0.5) return nonneg(-std::log1p(t));
  return -std::log((1.0 - w) + w * std::exp(-x));
}

std::vector<double> prob_step(const Network& net, std::size_t k, const std::vector<double>& p,
                              Transmission mode) {
  check_probabilities(net, p);
  const Frame& frame = net.frame(k);
  std::vector<double> next(net.n());
  for (std::size_t i = 0; i < net.n(); ++i) {
    double log_no_excitation = 0.0;
    for (const InEdge& e : frame.excitatory_in[i]) log_no_excitation += log_factor(e, p[e.src], mode);
    double log_no_inhibition = 0.0;
    for (const InEdge& e : frame.inhibitory_in[i]) log_no_inhibition += log_factor(e, p[e.src], mode);
    next[i] = nonneg(-std::expm1(log_no_excitation) * std::exp(log_no_inhibition));
  }
  return next;
}

std::vector<double> compute_pi(const Network& net, std::size_t k, const std::vector<double>& p,
                               Transmission mode) {
  check_probabilities(net, p);
  const Frame& frame = net.frame(k);
  std::vector<double> pi(net.n());
  for (std::size_t i = 0; i < net.n(); ++i) {
    double log_pi = 0.0;
    for (const InEdge& e : frame.inhibitory_in[i]) log_pi += log_factor(e, p[e.src], mode);
    pi[i] = std::exp(log_pi);
  }
  return pi;
}

InfoState to_info_state(const std::vector<double>& p, const std::vector<double>& pi, double slack) {
  if (p.size() != pi.size()) throw DomainError("p and pi differ in length");
  InfoState st;
  st.s.resize(p.size());
  st.o.resize(p.size());
  st.pi = pi;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0) || !(pi[i] >= 0.0 && pi[i] <= 1.0))
      throw DomainError("probability out of [0,1]");
    if (p[i] > pi[i] + slack) throw DomainError("infeasible probability pair");
    st.o[i] = nonneg(-std::log(pi[i]));
    if (pi[i] == 0.0) {
      st.s[i] = 0.0;
    } else {
      const double ratio = std::min(p[i] / pi[i], 1.0);
      st.s[i] = ratio == 1.0 ? kInf : nonneg(-std::log1p(-ratio));
    }
  }
  return st;
}

ProbabilityPair from_info_state(const InfoState& state) {
  ProbabilityPair out{std::vector<double>(state.s.size()), std::vector<double>(state.s.size())};
  for (std::size_t i = 0; i < state.s.size(); ++i) {
    const double pi = std::exp(-state.o[i]);
    out.pi[i] = pi;
    out.p[i] = nonneg(-pi * std::expm1(-state.s[i]));
  }
  return out;
}

InfoState info_step(const Network& net, std::size_t k, const InfoState& state, Transmission mode) {
  const std::size_t n = net.n();
  if (state.s.size() != n || state.o.size() != n || state.pi.size() != n)
    throw DomainError("info state dimension does not match network");
  const Frame& frame = net.frame(k);
  std::vector<double> s(n, 0.0), o(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const InEdge& e : frame.excitatory_in[i])
      s[i] += weight(e, mode) * tlogsigmoid(e.w * state.pi[e.src], state.s[e.src]);
    for (const InEdge& e : frame.inhibitory_in[i])
      o[i] += weight(e, mode) * tlogsigmoid(e.w * state.pi[e.src], state.s[e.src]);
  }
  return InfoState::from_so(std::move(s), std::move(o));
}

InfoState initial_info_state(const std::vector<double>& p0) {
  std::vector<double> s(p0.size());
  for (std::size_t i = 0; i < p0.size(); ++i) {
    if (!(p0[i] >= 0.0 && p0[i] <= 1.0)) throw DomainError("probability out of [0,1]");
    s[i] = p0[i] == 1.0 ? kInf : nonneg(-std::log1p(-p0[i]));
  }
  return InfoState::from_so(std::move(s), std::vector<double>(p0.size(), 0.0));
}

Matrix prob_trajectory(const Network& net, std::size_t horizon, Transmission mode) {
  Matrix out(horizon + 1, net.n());
  std::vector<double> p = net.spec().initial_p;
  for (std::size_t k = 0;; ++k) {
    for (std::size_t i = 0; i < net.n(); ++i) out(k, i) = p[i];
    if (k == horizon) break;
    p = prob_step(net, k, p, mode);
  }
  return out;
}

InfoTrajectory info_trajectory(const Network& net, std::size_t horizon, Transmission mode) {
  InfoTrajectory out{Matrix(horizon + 1, net.n()), Matrix(horizon + 1, net.n()),
                     Matrix(horizon + 1, net.n())};
  InfoState st = initial_info_state(net.spec().initial_p);
  for (std::size_t k = 0;; ++k) {
    const auto recovered = from_info_state(st);
    for (std::size_t i = 0; i < net.n(); ++i) {
      out.s(k, i) = st.s[i];
      out.o(k, i) = st.o[i];
      out.p(k, i) = recovered.p[i];
    }
    if (k == horizon) break;
    st = info_step(net, k, st, mode);
  }
  return out;
}

}  // namespace transnn
