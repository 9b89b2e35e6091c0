#include <doctest.h>

#include <cmath>

#include "cournot/cost.hpp"

using namespace cournot;

TEST_CASE("cost values per family") {
  CHECK(cost_value(Affine{2.0, 1.0}, 3.0) == doctest::Approx(7.0));
  CHECK(cost_value(ConcaveQuadratic{5.0, 1.0}, 2.0) == doctest::Approx(6.0));
  CHECK(cost_value(LogConcave{2.0, 7.0}, 10.0) == doctest::Approx(20.0 + std::log(71.0)));
  const PiecewiseLinearConcave pwl{{0.0, 1.0, 2.0}, {0.0, 3.0, 4.0}};
  CHECK(cost_value(pwl, 0.5) == doctest::Approx(1.5));
  CHECK(cost_value(pwl, 1.5) == doctest::Approx(3.5));
  CHECK(cost_value(pwl, 2.0) == doctest::Approx(4.0));
}

TEST_CASE("cost derivatives") {
  CHECK(cost_derivative(Affine{2.0, 1.0}, 5.0) == doctest::Approx(2.0));
  CHECK(cost_derivative(ConcaveQuadratic{5.0, 1.0}, 2.0) == doctest::Approx(1.0));
  CHECK(cost_derivative(LogConcave{2.0, 7.0}, 0.0) == doctest::Approx(9.0));
  const PiecewiseLinearConcave pwl{{0.0, 1.0, 2.0}, {0.0, 3.0, 4.0}};
  CHECK(cost_derivative(pwl, 0.5) == doctest::Approx(3.0));
  CHECK(cost_derivative(pwl, 1.5) == doctest::Approx(1.0));
}

TEST_CASE("validation rejects non-increasing and non-concave costs") {
  CHECK_NOTHROW(validate_cost_on(Affine{0.0, 3.0}, 0.0, 10.0));
  CHECK_THROWS(validate_cost_on(Affine{-1.0, 0.0}, 0.0, 10.0));
  // nu - 2 d hi < 0: decreasing near the right endpoint
  CHECK_THROWS(validate_cost_on(ConcaveQuadratic{1.0, 1.0}, 0.0, 10.0));
  CHECK_NOTHROW(validate_cost_on(ConcaveQuadratic{20.0, 1.0}, 0.0, 10.0));
  CHECK_THROWS(validate_cost_on(LogConcave{1.0, 0.0}, 0.0, 10.0));
  // convex pwl (slopes increase)
  CHECK_THROWS(validate_cost_on(
      PiecewiseLinearConcave{{0.0, 1.0, 2.0}, {0.0, 1.0, 3.0}}, 0.0, 2.0));
  // breakpoints do not cover the interval
  CHECK_THROWS(validate_cost_on(
      PiecewiseLinearConcave{{0.0, 1.0, 2.0}, {0.0, 3.0, 4.0}}, 0.0, 5.0));
  CHECK_NOTHROW(validate_cost_on(
      PiecewiseLinearConcave{{0.0, 1.0, 2.0}, {0.0, 3.0, 4.0}}, 0.0, 2.0));
}
