#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "support/generators.hpp"
#include "transnn/error.hpp"
#include "transnn/markov_oracle.hpp"

using namespace transnn;

namespace {

EdgeSpec edge(std::size_t dst, std::size_t src, EdgeType type, double w, std::int64_t a = 1) {
  return {dst, src, type, w, a, w * static_cast<double>(a)};
}

NetworkSpec spec_of(std::size_t n, std::vector<double> p0, std::vector<EdgeSpec> edges,
                    std::size_t horizon = 1) {
  NetworkSpec s;
  s.n = n;
  s.horizon = horizon;
  s.initial_p = std::move(p0);
  s.frames = {FrameSpec{std::move(edges)}};
  return s;
}

// Direct evaluation of the per-node firing rule, independent of the library.
double rho(const NetworkSpec& s, std::size_t i, std::uint64_t x, bool population) {
  double none_exc = 1.0, none_inh = 1.0;
  for (const auto& e : s.frames[0].edges) {
    if (e.dst != i || !((x >> e.src) & 1)) continue;
    const double miss = std::pow(1.0 - e.w, population ? static_cast<double>(e.a) : 1.0);
    (e.type == EdgeType::excitatory ? none_exc : none_inh) *= miss;
  }
  return (1.0 - none_exc) * none_inh;
}

}  // namespace

TEST_CASE("fire_probability examples") {
  const Network chain(spec_of(2, {1, 0}, {edge(1, 0, EdgeType::excitatory, 0.5)}));
  CHECK(fire_probability(chain, 0, BinaryState(2), 1) == 0.0);
  CHECK(fire_probability(chain, 0, BinaryState::from_index(1, 2), 1) == 0.5);
  CHECK_THROWS_AS(fire_probability(chain, 0, BinaryState(2), 2), Error);

  const Network mixed(spec_of(3, {1, 1, 0},
                              {edge(2, 0, EdgeType::excitatory, 0.8), edge(2, 1, EdgeType::inhibitory, 0.5)}));
  CHECK(fire_probability(mixed, 0, BinaryState::from_index(3, 3), 2) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("transition_probability examples") {
  const Network chain(spec_of(2, {1, 0}, {edge(1, 0, EdgeType::excitatory, 0.5)}));
  const BinaryState zero(2);
  CHECK(transition_probability(chain, 0, zero, zero) == 1.0);
  for (std::uint64_t q = 1; q < 4; ++q)
    CHECK(transition_probability(chain, 0, zero, BinaryState::from_index(q, 2)) == 0.0);
  const BinaryState x = BinaryState::from_index(1, 2);
  CHECK(transition_probability(chain, 0, x, BinaryState::from_index(0b10, 2)) == 0.5);
  CHECK(transition_probability(chain, 0, x, BinaryState::from_index(0b00, 2)) == 0.5);
  CHECK(transition_probability(chain, 0, x, BinaryState::from_index(0b01, 2)) == 0.0);
  CHECK(transition_probability(chain, 0, x, BinaryState::from_index(0b11, 2)) == 0.0);
  CHECK_THROWS_AS(transition_probability(chain, 0, x, BinaryState(3)), Error);
}

TEST_CASE("fire_probability matches direct evaluation, both modes") {
  std::mt19937_64 rng(5);
  testing::RandomSpecOptions opt;
  opt.a_max = 4;
  opt.edge_probability = 0.5;
  for (int t = 0; t < 30; ++t) {
    const NetworkSpec s = testing::random_spec(rng, opt);
    const Network net(s);
    for (std::uint64_t x = 0; x < (1u << s.n); ++x) {
      for (std::size_t i = 0; i < s.n; ++i) {
        const BinaryState bx = BinaryState::from_index(x, s.n);
        CHECK(fire_probability(net, 0, bx, i) == doctest::Approx(rho(s, i, x, false)).epsilon(1e-14));
        CHECK(fire_probability(net, 0, bx, i, Transmission::population) ==
              doctest::Approx(rho(s, i, x, true)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("population mode with a = 1 equals single mode bitwise") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const Network net(testing::random_spec(rng));
    for (std::uint64_t x = 0; x < (1u << net.n()); ++x)
      for (std::uint64_t q = 0; q < (1u << net.n()); ++q) {
        const auto bx = BinaryState::from_index(x, net.n());
        const auto bq = BinaryState::from_index(q, net.n());
        CHECK(transition_probability(net, 0, bx, bq) ==
              transition_probability(net, 0, bx, bq, Transmission::population));
      }
  }
}

TEST_CASE("evolve_distribution") {
  std::mt19937_64 rng(7);
  testing::RandomSpecOptions opt;
  opt.min_nodes = opt.max_nodes = 3;
  opt.edge_probability = 0.6;
  opt.a_max = 3;
  for (int t = 0; t < 20; ++t) {
    const NetworkSpec s = testing::random_spec(rng, opt);
    const Network net(s);
    const std::size_t n = s.n;

    SUBCASE("point mass at zero stays put") {
      const auto d = evolve_distribution(net, StateDistribution::point_mass(BinaryState(n)), 0);
      CHECK(d[0] == 1.0);
      CHECK(d.total() == 1.0);
    }
    SUBCASE("point mass gives a kernel row") {
      for (std::uint64_t x = 0; x < (1u << n); ++x) {
        const auto bx = BinaryState::from_index(x, n);
        const auto d = evolve_distribution(net, StateDistribution::point_mass(bx), 0);
        for (std::uint64_t q = 0; q < (1u << n); ++q)
          CHECK(d[q] == doctest::Approx(transition_probability(net, 0, bx, BinaryState::from_index(q, n))).epsilon(1e-14));
      }
    }
    SUBCASE("uniform start matches brute-force summation") {
      for (Transmission mode : {Transmission::single, Transmission::population}) {
        const bool pop = mode == Transmission::population;
        StateDistribution u(n);
        for (std::uint64_t x = 0; x < 8; ++x) u[x] = 0.125;
        const auto d = evolve_distribution(net, u, 0, mode);
        for (std::uint64_t q = 0; q < 8; ++q) {
          double acc = 0.0;
          for (std::uint64_t x = 0; x < 8; ++x) {
            double tp = 1.0;
            for (std::size_t i = 0; i < 3; ++i) {
              const double r = rho(s, i, x, pop);
              tp *= ((q >> i) & 1) ? r : 1.0 - r;
            }
            acc += 0.125 * tp;
          }
          CHECK(d[q] == doctest::Approx(acc).epsilon(1e-13));
        }
        CHECK(std::abs(d.total() - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("capacity cap") {
  CHECK_THROWS_AS(StateDistribution(kOracleMaxNodes + 1), CapacityError);
  try {
    StateDistribution d(kOracleMaxNodes + 1);
  } catch (const CapacityError& e) {
    CHECK(std::string(e.what()).find("state space too large") != std::string::npos);
  }
}

TEST_CASE("product distribution and marginals") {
  const auto d = StateDistribution::product({0.2, 0.7, 1.0});
  CHECK(d.total() == doctest::Approx(1.0).epsilon(1e-15));
  const auto m = d.marginals();
  CHECK(m[0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(m[1] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(m[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exact_marginals examples") {
  const Network lone(spec_of(1, {0.3}, {}, 2));
  const Matrix m = exact_marginals(lone, 2);
  CHECK(m(0, 0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(m(1, 0) == 0.0);
  CHECK(m(2, 0) == 0.0);

  const Network chain(spec_of(2, {1, 0}, {edge(1, 0, EdgeType::excitatory, 0.5)}));
  CHECK(exact_marginals(chain, 1)(1, 1) == 0.5);
}
