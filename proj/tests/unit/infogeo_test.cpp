#include <doctest.h>

#include <random>

#include "hesse/errors.hpp"
#include "hesse/infogeo.hpp"
#include "hesse/structure.hpp"

using namespace hesse;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(v.size());
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

const SimplexFamily bernoulli(2, SimplexCoords::Mean);

}  // namespace

TEST_CASE("fisher metric") {
  CHECK(fisher_metric(bernoulli, vec({0.5}))(0, 0) == doctest::Approx(4));
  CHECK(fisher_metric(bernoulli, vec({0.3}))(0, 0) == doctest::Approx(100.0 / 21));
  Eigen::MatrixXd expected(2, 2);
  expected << 2.0 / 9, -1.0 / 9, -1.0 / 9, 2.0 / 9;
  CHECK(fisher_metric(SimplexFamily(3, SimplexCoords::Natural), vec({0, 0})).isApprox(expected));
  CHECK(fisher_metric(SimplexFamily(2, SimplexCoords::Natural), vec({0}))(0, 0) == doctest::Approx(0.25));
  CHECK(multinomial_logpartition_potential(2)->jet(vec({0}), 2).d({0, 0}) == doctest::Approx(0.25));
}

TEST_CASE("skewness and connections") {
  // T = 1/p^2 - 1/(1-p)^2
  CHECK(skewness_tensor(bernoulli, vec({0.3}))(0, 0, 0) == doctest::Approx(4000.0 / 441));
  for (double a : {-1.0, 0.0, 0.5, 1.0}) CHECK(alpha_connection(bernoulli, vec({0.5}), a).lowered.max_abs() < 1e-14);
  const SimplexFamily tri(3, SimplexCoords::Natural);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0, 1);
  for (int s = 0; s < 20; ++s) {
    const Eigen::VectorXd theta = vec({n(rng), n(rng)});
    CHECK(alpha_connection(tri, theta, 1.0).lowered.max_abs() < 1e-10);
    const Tensor p = alpha_connection(tri, theta, 0.7).lowered, m = alpha_connection(tri, theta, -0.7).lowered;
    CHECK((p + m - 2.0 * alpha_connection(tri, theta, 0).lowered).max_abs() < 1e-12);
    CHECK(duality_pairing_check(tri, theta, 1) == doctest::Approx(duality_pairing_check(tri, theta, -1)));
  }
}

TEST_CASE("duality pairing") {
  CHECK(duality_pairing_check(bernoulli, vec({0.3}), 1) < 1e-10);
  CHECK(duality_pairing_check(bernoulli, vec({0.3}), 0) < 1e-10);
  CHECK(duality_pairing_check(SimplexFamily(4, SimplexCoords::Mean), vec({0.1, 0.2, 0.3}), 2) < 1e-10);
}

TEST_CASE("certificate") {
  const HessianCertificate b = hessian_structure_certificate(2, {SimplexFamily(2, SimplexCoords::Mean).to_natural(vec({0.2}))});
  CHECK(b.certified());
  CHECK(b.properness_witness == doctest::Approx(375.0 / 32));

  std::mt19937_64 rng(8);
  std::normal_distribution<double> n(0, 1);
  std::vector<Eigen::VectorXd> thetas;
  for (int s = 0; s < 50; ++s) thetas.push_back(vec({n(rng), n(rng)}));
  CHECK(hessian_structure_certificate(3, thetas).certified());
  CHECK_THROWS_AS(hessian_structure_certificate(3, {}), InvalidArgument);
}

TEST_CASE("cross-module metric") {
  const SimplexFamily tri(3, SimplexCoords::Natural);
  const Eigen::VectorXd theta = vec({0.4, -1.3});
  const StructurePoint sp = structure_at(multinomial_logpartition_potential(3), theta, 4);
  CHECK((sp.metric.g - fisher_metric(tri, theta)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("coordinates and domain") {
  const SimplexFamily tri(3, SimplexCoords::Mean);
  const Eigen::VectorXd p = vec({0.2, 0.5});
  CHECK(tri.probabilities(p).sum() == doctest::Approx(1).epsilon(1e-14));
  CHECK(SimplexFamily(3, SimplexCoords::Natural).to_mean(tri.to_natural(p)).isApprox(p));
  CHECK_FALSE(tri.interior(vec({0.6, 0.5})));
  CHECK_THROWS_AS(fisher_metric(tri, vec({0.6, 0.5})), DomainError);
  CHECK_THROWS_AS(SimplexFamily(1, SimplexCoords::Mean), InvalidArgument);
}
