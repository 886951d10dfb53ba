#include "transnn/limit_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "transnn/error.hpp"

namespace transnn {

double sigma(double s, double o) {
  if (!(s >= 0.0) || !(o >= 0.0)) throw DomainError("sigma: arguments must be nonnegative");
  const double v = -std::exp(-o) * std::expm1(-s);
  return std::clamp(v, 0.0, 1.0);
}

std::vector<double> phi(const LimitState& state) {
  if (state.s_bar.size() != state.o_bar.size()) throw DomainError("limit state halves differ in length");
  std::vector<double> out(state.s_bar.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sigma(state.s_bar[i], state.o_bar[i]);
  return out;
}

LimitState limit_info_step(const Network& net, std::size_t k, const LimitState& state) {
  const std::size_t n = net.n();
  if (state.s_bar.size() != n) throw DomainError("limit state dimension does not match network");
  const std::vector<double> stacked = multiply(net.frame(k).stacked_rate, phi(state));
  return {std::vector<double>(stacked.begin(), stacked.begin() + n),
          std::vector<double>(stacked.begin() + n, stacked.end())};
}

std::vector<double> limit_prob_step(const Network& net, std::size_t k, const std::vector<double>& p) {
  if (p.size() != net.n()) throw DomainError("probability vector dimension does not match network");
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("probability out of [0,1]");
  const Frame& frame = net.frame(k);
  const auto excitation = multiply(frame.excitatory_rate, p);
  const auto inhibition = multiply(frame.inhibitory_rate, p);
  std::vector<double> next(net.n());
  for (std::size_t i = 0; i < next.size(); ++i)
    next[i] = std::clamp(-std::expm1(-excitation[i]) * std::exp(-inhibition[i]), 0.0, 1.0);
  return next;
}

LimitState initial_limit_state(const std::vector<double>& p0) {
  LimitState st{std::vector<double>(p0.size()), std::vector<double>(p0.size(), 0.0)};
  for (std::size_t i = 0; i < p0.size(); ++i) {
    if (!(p0[i] >= 0.0 && p0[i] <= 1.0)) throw DomainError("probability out of [0,1]");
    st.s_bar[i] = p0[i] == 1.0 ? std::numeric_limits<double>::infinity() : -std::log1p(-p0[i]);
    if (st.s_bar[i] == 0.0) st.s_bar[i] = 0.0;
  }
  return st;
}

double poisson_gap(std::int64_t a, double lambda, double p) {
  if (a < 1) throw DomainError("poisson_gap: count must be at least 1");
  const double rate = lambda * p;
  if (!(rate >= 0.0)) throw DomainError("poisson_gap: rate must be nonnegative");
  const double count = static_cast<double>(a);
  if (rate > count) throw DomainError("probability λ/a·p exceeds 1");
  // (1 - x/a)^a = exp(a log1p(-x/a)) keeps precision for large a.
  const double binomial = std::exp(count * std::log1p(-rate / count));
  return std::fabs(binomial - std::exp(-rate));
}

Matrix limit_prob_trajectory(const Network& net, std::size_t horizon) {
  Matrix out(horizon + 1, net.n());
  std::vector<double> p = net.spec().initial_p;
  for (std::size_t k = 0;; ++k) {
    for (std::size_t i = 0; i < net.n(); ++i) out(k, i) = p[i];
    if (k == horizon) break;
    p = limit_prob_step(net, k, p);
  }
  return out;
}

LimitTrajectory limit_info_trajectory(const Network& net, std::size_t horizon) {
  LimitTrajectory out{Matrix(horizon + 1, net.n()), Matrix(horizon + 1, net.n()),
                      Matrix(horizon + 1, net.n())};
  LimitState st = initial_limit_state(net.spec().initial_p);
  for (std::size_t k = 0;; ++k) {
    const auto p = phi(st);
    for (std::size_t i = 0; i < net.n(); ++i) {
      out.s_bar(k, i) = st.s_bar[i];
      out.o_bar(k, i) = st.o_bar[i];
      out.p(k, i) = p[i];
    }
    if (k == horizon) break;
    st = limit_info_step(net, k, st);
  }
  return out;
}

}  // namespace transnn
