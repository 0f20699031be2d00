#include <doctest.h>

#include <random>

#include "hesse/errors.hpp"
#include "hesse/soliton.hpp"

using namespace hesse;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(v.size());
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

VectorFieldPtr field(std::initializer_list<const char*> comps) {
  std::vector<Expression> e;
  for (const char* c : comps) e.push_back(parse_potential(c, static_cast<int>(comps.size())));
  return expression_vector_field(std::move(e));
}

ScalarFieldPtr scalar(const char* src, int n) { return expression_scalar_field(parse_potential(src, n)); }

}  // namespace

TEST_CASE("classification") {
  CHECK(classify(1) == SolitonClass::Expanding);
  CHECK(classify(0) == SolitonClass::Steady);
  CHECK(classify(-0.5) == SolitonClass::Shrinking);
  CHECK(to_string(SolitonClass::Shrinking) == "shrinking");
}

TEST_CASE("lie derivative of the metric") {
  const StructurePoint flat = structure_at(quadratic_potential(2), vec({0.4, -1.0}), 4);
  CHECK(lie_derivative_metric(flat, *zero_vector_field(2)).cwiseAbs().maxCoeff() == 0);
  CHECK(lie_derivative_metric(flat, *field({"x1", "x2"})).isApprox(2 * Eigen::MatrixXd::Identity(2, 2)));
  CHECK(lie_derivative_metric(flat, *field({"-x2", "x1"})).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("hessian of a function") {
  const StructurePoint flat = structure_at(quadratic_potential(2), vec({0.4, -1.0}), 4);
  CHECK(hessian_of_function(flat, *scalar("3", 2)).cwiseAbs().maxCoeff() == 0);
  CHECK(hessian_of_function(flat, *scalar("(x1^2 + x2^2)/2", 2)).isApprox(Eigen::MatrixXd::Identity(2, 2)));
  const StructurePoint cone = structure_at(log_cone_potential(2), vec({0, 1}), 4);
  const Eigen::MatrixXd h = hessian_of_function(cone, *scalar("-log(x2^2 - x1^2)", 2));
  CHECK(std::abs(h(1, 1)) < 1e-14);
}

TEST_CASE("soliton residuals") {
  const StructurePoint cone = structure_at(log_cone_potential(2), vec({0.2, 1.1}), 4);
  CHECK(soliton_residual(cone, SolitonSpec::vector(zero_vector_field(2), 1.0)).max_abs < 1e-13);
  const StructurePoint flat = structure_at(quadratic_potential(2), vec({0.1, 0.2}), 4);
  CHECK(soliton_residual(flat, SolitonSpec::vector(zero_vector_field(2), 0.0)).max_abs == 0);
  const auto r = soliton_residual(flat, SolitonSpec::vector(zero_vector_field(2), 1.0));
  CHECK(r.tensor.isApprox(-Eigen::MatrixXd::Identity(2, 2)));
  CHECK(r.max_abs == 1.0);
}

TEST_CASE("spec validation") {
  SolitonSpec s = SolitonSpec::vector(zero_vector_field(3), 1);
  CHECK_THROWS_AS(s.validate(2), InvalidArgument);
  s.f = scalar("x1", 3);
  CHECK_THROWS_AS(s.validate(3), InvalidArgument);
  CHECK_NOTHROW(SolitonSpec::gradient(scalar("x1", 2), 0).validate(2));
}

TEST_CASE("einstein fit") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Eigen::VectorXd> cone;
  for (int s = 0; s < 100; ++s) {
    const double t = 0.5 + 2 * u(rng);
    cone.push_back(vec({0.8 * t * (2 * u(rng) - 1), t}));
  }
  const EinsteinFit fit = einstein_fit(log_cone_potential(2), cone);
  CHECK(std::abs(fit.lambda - 1) < 1e-9);
  CHECK(fit.max_residual < 1e-9);

  const EinsteinFit flat = einstein_fit(quadratic_potential(2), {vec({1, 2})});
  CHECK(flat.lambda == 0);
  CHECK(flat.max_residual == 0);

  const EinsteinFit torus = einstein_fit(torus_perturbed_potential(2, 0.05, {1, 1}), {vec({0.3, 0.5}), vec({1.2, -0.7}), vec({2.0, 0.1})});
  CHECK(torus.max_residual > 1e-3);
  CHECK_THROWS_AS(einstein_fit(quadratic_potential(2), {}), InvalidArgument);
}

TEST_CASE("dual soliton") {
  for (const auto& x : {vec({0, 1}), vec({0.3, 1.2}), vec({-0.5, 0.9})}) {
    const StructurePoint cone = structure_at(log_cone_potential(2), x, 4);
    const DualSoliton d = dual_soliton(cone, SolitonSpec::vector(zero_vector_field(2), 1.0));
    CHECK(d.residual.max_abs < 1e-8);
    // alpha = d(phi + log 2) on the cone, so the gradient form works with f = 0 as well.
    const DualSoliton g = dual_soliton(cone, SolitonSpec::gradient(scalar("0", 2), 1.0));
    CHECK(g.residual.max_abs < 1e-8);
    CHECK(lie_alpha_sharp_defect(cone) < 1e-8);
  }
  const StructurePoint flat = structure_at(quadratic_potential(2), vec({0.5, 0.5}), 4);
  const DualSoliton d = dual_soliton(flat, SolitonSpec::vector(field({"-x2", "x1"}), 0.0));
  CHECK(d.residual.max_abs == 0);
}

TEST_CASE("gradient form matches vector form with X = grad f") {
  const PotentialPtr phi = torus_perturbed_potential(2, 0.05, {1, 1});
  const ScalarFieldPtr f = scalar("sin(x1)*x2 + x1^2", 2);
  const VectorFieldPtr X = gradient_field(phi, f);
  for (const auto& x : {vec({0.3, 0.1}), vec({-1.0, 2.0})}) {
    const StructurePoint sp = structure_at(phi, x, 4);
    const auto a = soliton_residual(sp, SolitonSpec::gradient(f, 0.3));
    const auto b = soliton_residual(sp, SolitonSpec::vector(X, 0.3));
    CHECK((a.tensor - b.tensor).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("steady killing check") {
  const StructurePoint flat = structure_at(quadratic_potential(2), vec({0.5, -0.5}), 4);
  const SteadyCheck rot = steady_killing_check(flat, *field({"-x2", "x1"}));
  CHECK(rot.steady);
  CHECK(rot.beta_norm == 0);
  const SteadyCheck pos = steady_killing_check(flat, *field({"x1", "x2"}));
  CHECK_FALSE(pos.steady);
  CHECK(pos.lie_norm == doctest::Approx(2 * std::sqrt(2.0)));
  const StructurePoint cone = structure_at(log_cone_potential(2), vec({0, 1}), 4);
  CHECK_FALSE(steady_killing_check(cone, *zero_vector_field(2)).steady);
}

TEST_CASE("trace identities") {
  const StructurePoint cone = structure_at(log_cone_potential(2), vec({0, 1}), 4);
  CHECK(std::abs(trace_identity_residual(cone).koszul) < 1e-14);
  const SolitonSpec spec = SolitonSpec::vector(zero_vector_field(2), 1.0);
  CHECK(std::abs(*trace_identity_residual(cone, &spec).soliton) < 1e-14);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int s = 0; s < 20; ++s) {
    const StructurePoint t = structure_at(torus_perturbed_potential(2, 0.05, {1, 1}), vec({u(rng), u(rng)}), 4);
    CHECK(std::abs(trace_identity_residual(t).koszul) < 1e-8);
  }
}
