#include <doctest.h>

#include <cmath>

#include "helicoid/errors.hpp"
#include "helicoid/ode.hpp"

using namespace helicoid;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(v.size());
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("exponential decay") {
  const OdeRhs f = [](double, const Eigen::VectorXd& y) -> Eigen::VectorXd { return -y; };
  const auto steps = integrate_rkf45(f, 0, vec({1}), 2, {1e-11});
  REQUIRE(!steps.empty());
  CHECK(steps.front().t == 0);
  CHECK(steps.front().y[0] == 1);
  CHECK(steps.back().t == 2);
  CHECK(steps.back().y[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("harmonic oscillator keeps its energy") {
  const OdeRhs f = [](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return vec({y[1], -y[0]});
  };
  const auto steps = integrate_rkf45(f, 0, vec({1, 0}), 2 * M_PI, {1e-11});
  CHECK(std::abs(steps.back().y[0] - 1) < 1e-8);
  CHECK(std::abs(steps.back().y[1]) < 1e-8);
}

TEST_CASE("backward integration") {
  const OdeRhs f = [](double t, const Eigen::VectorXd&) -> Eigen::VectorXd { return vec({t}); };
  const auto steps = integrate_rkf45(f, 1, vec({0.5}), 0, {1e-10});
  CHECK(steps.back().t == 0);
  CHECK(std::abs(steps.back().y[0]) < 1e-10);
}

TEST_CASE("observer sees every accepted step in order") {
  const OdeRhs f = [](double, const Eigen::VectorXd& y) -> Eigen::VectorXd { return y; };
  double last = -1;
  int calls = 0;
  integrate_rkf45(f, 0, vec({1}), 1, {1e-9}, [&](const OdeStep& s) {
    CHECK(s.t > last);
    last = s.t;
    ++calls;
  });
  CHECK(calls > 2);
  CHECK(last == 1);
}

TEST_CASE("tighter tolerance takes more steps and lands closer") {
  const OdeRhs f = [](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return vec({std::cos(t) * y[0]});
  };
  const auto loose = integrate_rkf45(f, 0, vec({1}), 5, {1e-6});
  const auto tight = integrate_rkf45(f, 0, vec({1}), 5, {1e-10});
  const double exact = std::exp(std::sin(5.0));
  CHECK(tight.size() > loose.size());
  CHECK(std::abs(tight.back().y[0] - exact) < std::abs(loose.back().y[0] - exact) + 1e-15);
  CHECK(std::abs(tight.back().y[0] - exact) < 1e-8);
}

TEST_CASE("failures") {
  const OdeRhs f = [](double, const Eigen::VectorXd& y) -> Eigen::VectorXd { return y; };
  OdeOptions few;
  few.max_steps = 3;
  few.tol = 1e-12;
  CHECK_THROWS_AS(integrate_rkf45(f, 0, vec({1}), 10, few), ToleranceNotMet);
  OdeOptions bad;
  bad.tol = 0;
  CHECK_THROWS_AS(integrate_rkf45(f, 0, vec({1}), 1, bad), DomainError);
  // Finite-time blow-up of y' = y^2 from y(0) = 1 at t = 1.
  const OdeRhs blow = [](double, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return vec({y[0] * y[0]});
  };
  CHECK_THROWS_AS(integrate_rkf45(blow, 0, vec({1}), 2, {1e-9}), ToleranceNotMet);
}

TEST_CASE("zero-length span returns only the initial state") {
  const OdeRhs f = [](double, const Eigen::VectorXd& y) -> Eigen::VectorXd { return y; };
  const auto steps = integrate_rkf45(f, 1, vec({3}), 1);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].y[0] == 3);
}
