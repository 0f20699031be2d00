#include <doctest.h>

#include "hesse/errors.hpp"
#include "hesse/potential.hpp"

using namespace hesse;

TEST_CASE("families") {
  Eigen::VectorXd x(2);
  x << 0.0, 1.0;
  const JetD cone = log_cone_potential(2)->jet(x, 2);
  CHECK(cone.value() == doctest::Approx(0.0));
  CHECK(cone.d({1}) == doctest::Approx(-2.0));
  CHECK(cone.d({0, 0}) == doctest::Approx(2.0));
  CHECK(cone.d({1, 1}) == doctest::Approx(2.0));

  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  const JetD lp = multinomial_logpartition_potential(3)->jet(zero, 2);
  CHECK(lp.d({0, 0}) == doctest::Approx(2.0 / 9));
  CHECK(lp.d({0, 1}) == doctest::Approx(-1.0 / 9));

  const JetD q = builtin_family("quadratic", {3, 0, {}})->jet(Eigen::VectorXd::Ones(3), 2);
  CHECK(q.hessian().isApprox(Eigen::MatrixXd::Identity(3, 3)));
}

TEST_CASE("torus epsilon bound") {
  CHECK(torus_epsilon_bound(std::vector<double>{1, 1}) == doctest::Approx(0.5));
  CHECK_NOTHROW(torus_perturbed_potential(2, 0.49, {1, 1}));
  CHECK_THROWS_AS(torus_perturbed_potential(2, 0.5, {1, 1}), InvalidArgument);
  CHECK_THROWS_AS(torus_perturbed_potential(2, 0.1, {1}), InvalidArgument);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(builtin_family("paraboloid", {}), InvalidArgument);
  CHECK_THROWS_AS(log_cone_potential(1), InvalidArgument);
  CHECK_THROWS_AS(multinomial_logpartition_potential(1), InvalidArgument);
  Eigen::VectorXd outside(2);
  outside << 1.0, 0.5;
  CHECK_THROWS_AS(log_cone_potential(2)->jet(outside, 2), DomainError);
  CHECK_THROWS_AS(quadratic_potential(2)->jet(Eigen::VectorXd::Zero(3), 2), InvalidArgument);
  CHECK_THROWS_AS(quadratic_potential(2)->jet(Eigen::VectorXd::Zero(2), kMaxJetOrder + 1), InvalidArgument);
  CHECK_THROWS_AS(scaled_potential(quadratic_potential(2), 0.0), InvalidArgument);
}

TEST_CASE("positive definiteness test") {
  CHECK(hessian_is_positive_definite(Eigen::MatrixXd::Identity(2, 2)));
  Eigen::MatrixXd m(2, 2);
  m << 1, 1, 1, 1;
  CHECK_FALSE(hessian_is_positive_definite(m));
  CHECK_FALSE(hessian_is_positive_definite(-Eigen::MatrixXd::Identity(2, 2)));
}
