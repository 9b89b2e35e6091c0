#include <doctest.h>

#include <cmath>

#include "cournot/model.hpp"
#include "oracles.hpp"

using namespace cournot;

namespace {

Instance monopoly() {
  Instance inst;
  inst.N = 1;
  inst.n = 0;
  inst.alpha = 10.0;
  inst.beta = 1.0;
  inst.lower = {0.0};
  inst.upper = {10.0};
  inst.costs = {Affine{2.0, 0.0}};
  inst.validate();
  return inst;
}

Instance random_instance(oracles::Rng& rng, int N, int n) {
  Instance inst;
  inst.N = N;
  inst.n = n;
  inst.alpha = rng.uniform(10.0, 30.0);
  inst.beta = rng.uniform(0.01, 1.0);
  for (int i = 0; i < N; ++i) {
    inst.lower.push_back(0.0);
    inst.upper.push_back(rng.uniform(1.0, 20.0));
    if (i < n)
      inst.costs.push_back(LogConcave{rng.uniform(0.0, 5.0), rng.uniform(0.5, 10.0)});
    else
      inst.costs.push_back(Affine{rng.uniform(0.0, 10.0), 0.0});
  }
  inst.validate();
  return inst;
}

}  // namespace

TEST_CASE("profit examples") {
  const Instance m = monopoly();
  CHECK(profit(m, {4.0}, 0) == doctest::Approx(16.0));
  CHECK(profit(m, {0.0}, 0) == doctest::Approx(0.0));

  Instance duo;
  duo.N = 2;
  duo.n = 1;
  duo.alpha = 20.0;
  duo.beta = 0.001;
  duo.lower = {0.0, 0.0};
  duo.upper = {100.0, 100.0};
  duo.costs = {LogConcave{2.0, 7.0}, Affine{1.0, 0.0}};
  duo.validate();
  CHECK(profit(duo, {10.0, 10.0}, 0) ==
        doctest::Approx((20.0 - 0.02) * 10.0 - 20.0 - std::log(71.0)));

  CHECK_THROWS(profit(m, {4.0}, 1));
  CHECK_THROWS(profit(m, {40.0}, 0));  // infeasible
}

TEST_CASE("phi basics") {
  const Instance m = monopoly();
  CHECK(phi(m, {0.0}, {4.0}) == doctest::Approx(-40.0 + 16.0 + 8.0));  // h = 2t
  Instance free_cost = m;
  free_cost.costs = {Affine{0.0, 0.0}};
  CHECK(phi(free_cost, {0.0}, {4.0}) == doctest::Approx(-24.0));
}

TEST_CASE("phi(x,x) = 0 for random feasible points") {
  oracles::Rng rng{11};
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = random_instance(rng, 1 + int(rng.next() % 6), 0);
    for (int k = 0; k < 50; ++k) {
      const auto x = oracles::random_feasible(inst, rng);
      CHECK(std::abs(phi(inst, x, x)) <= 1e-10 * (1.0 + problem_scale(inst)));
    }
  }
}

TEST_CASE("matrix-free phi agrees with the dense-matrix oracle") {
  oracles::Rng rng{12};
  for (int trial = 0; trial < 50; ++trial) {
    const int N = 1 + int(rng.next() % 10);
    const Instance inst = random_instance(rng, N, std::min(N, int(rng.next() % 4)));
    const auto x = oracles::random_feasible(inst, rng);
    const auto y = oracles::random_feasible(inst, rng);
    const double fast = phi(inst, x, y);
    const double dense = oracles::dense_phi(inst, x, y);
    CHECK(fast == doctest::Approx(dense).epsilon(1e-10));
  }
}

TEST_CASE("unilateral profit change depends only on the i-th coordinate") {
  oracles::Rng rng{13};
  const Instance inst = random_instance(rng, 4, 2);
  const auto x = oracles::random_feasible(inst, rng);
  for (int i = 0; i < inst.N; ++i) {
    auto y = x;
    y[i] = rng.uniform(inst.lower[i], inst.upper[i]);
    const double delta = profit(inst, y, i) - profit(inst, x, i);
    // perturbing non-i coordinates of the deviation leaves the change alone
    for (int j = 0; j < inst.N; ++j) {
      if (j == i) continue;
      auto y2 = y;
      // deviation semantics: only firm i moves, others stay at x
      y2[j] = x[j];
      CHECK(profit(inst, y2, i) - profit(inst, x, i) == doctest::Approx(delta));
    }
  }
}

TEST_CASE("existence_check closed forms") {
  Instance inst = monopoly();
  CHECK(existence_check(inst).ok);  // affine

  inst.n = 1;
  SUBCASE("concave quadratic boundary d = beta") {
    inst.costs = {ConcaveQuadratic{2.0 * inst.beta * 10.0 + 1.0, inst.beta}};
    CHECK(existence_check(inst).ok);  // d == beta: -2d >= -2beta holds
    inst.costs = {ConcaveQuadratic{2.0 * (2.0 * inst.beta) * 10.0, 2.0 * inst.beta}};
    CHECK_FALSE(existence_check(inst).ok);  // d = 2 beta
    inst.costs = {ConcaveQuadratic{2.0 * (0.5 * inst.beta) * 10.0, 0.5 * inst.beta}};
    CHECK(existence_check(inst).ok);  // d = beta/2
  }
  SUBCASE("log family") {
    Instance li = inst;
    li.beta = 0.005;
    li.costs = {LogConcave{1.0, 7.0}};
    CHECK_FALSE(existence_check(li).ok);  // 49 > 0.01
    // boundary gamma^2 = 2 beta (1 + gamma l)^2 with l = 0
    li.beta = 0.5;
    li.costs = {LogConcave{1.0, 1.0}};
    CHECK(existence_check(li).ok);  // 1 <= 2*0.5*1
    li.costs = {LogConcave{1.0, 1.0000001}};
    CHECK_FALSE(existence_check(li).ok);
  }
  SUBCASE("pwl flags kinks but passes") {
    Instance pi = inst;
    pi.costs = {PiecewiseLinearConcave{{0.0, 5.0, 10.0}, {0.0, 10.0, 15.0}}};
    const auto rep = existence_check(pi);
    CHECK(rep.ok);
    CHECK(rep.firms[0].kink);
  }
}

TEST_CASE("instance JSON round trip is bit-exact") {
  oracles::Rng rng{14};
  Instance inst = random_instance(rng, 5, 2);
  inst.costs[4] = PiecewiseLinearConcave{{0.0, inst.upper[4] / 3.0, inst.upper[4]},
                                         {0.1, 4.0, 5.0}};
  inst.n = 5;  // pwl counts as concave
  inst.costs[2] = ConcaveQuadratic{2.0 * 0.3 * inst.upper[2], 0.3};
  inst.validate();

  const std::string text = instance_to_json(inst);
  const Instance back = instance_from_json(text);
  CHECK(back.N == inst.N);
  CHECK(back.n == inst.n);
  CHECK(back.alpha == inst.alpha);  // exact
  CHECK(back.beta == inst.beta);
  for (int i = 0; i < inst.N; ++i) {
    CHECK(back.lower[i] == inst.lower[i]);
    CHECK(back.upper[i] == inst.upper[i]);
    CHECK(back.costs[i].index() == inst.costs[i].index());
  }
  CHECK(instance_to_json(back) == text);  // full fixed point
}

TEST_CASE("instance validation rejects bad data") {
  Instance inst = monopoly();
  inst.lower = {5.0};
  inst.upper = {1.0};
  CHECK_THROWS(inst.validate());
  inst = monopoly();
  inst.n = 0;
  inst.costs = {ConcaveQuadratic{20.0, 0.5}};  // concave cost past index n
  CHECK_THROWS(inst.validate());
  inst = monopoly();
  inst.beta = 0.0;
  CHECK_THROWS(inst.validate());
}
