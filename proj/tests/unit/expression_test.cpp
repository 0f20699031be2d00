#include <doctest.h>

#include <cmath>
#include <random>

#include "hesse/errors.hpp"
#include "hesse/expression.hpp"

using namespace hesse;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(v.size());
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

// Random well-formed source over x1..xn, kept inside the domains of log and sqrt.
std::string random_source(std::mt19937_64& rng, int n, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 8 : 1);
  auto var = [&] { return "x" + std::to_string(1 + static_cast<int>(rng() % n)); };
  switch (pick(rng)) {
    case 0: return std::to_string(1 + static_cast<int>(rng() % 9)) + ".5";
    case 1: return var();
    case 2: return "(" + random_source(rng, n, depth - 1) + " + " + random_source(rng, n, depth - 1) + ")";
    case 3: return "(" + random_source(rng, n, depth - 1) + " - " + random_source(rng, n, depth - 1) + ")";
    case 4: return random_source(rng, n, depth - 1) + " * " + random_source(rng, n, depth - 1);
    case 5: return "sin(" + random_source(rng, n, depth - 1) + ")";
    case 6: return "exp(" + random_source(rng, n, depth - 1) + " / 10)";
    case 7: return "log(1 + " + var() + "^2)";
    default: return "(" + random_source(rng, n, depth - 1) + ")^2";
  }
}

}  // namespace

TEST_CASE("parse and evaluate") {
  const Expression e = parse_potential("x1^2/2 + 3*x1*x2 - log(x2)", 2);
  const JetD j = e.jet(vec({1.0, 2.0}), 2);
  CHECK(j.value() == doctest::Approx(0.5 + 6.0 - std::log(2.0)));
  CHECK(j.d({0}) == doctest::Approx(1.0 + 6.0));
  CHECK(j.d({1}) == doctest::Approx(3.0 - 0.5));
  CHECK(j.d({0, 1}) == doctest::Approx(3.0));
  CHECK(j.d({1, 1}) == doctest::Approx(0.25));
}

TEST_CASE("unary minus binds looser than power") {
  CHECK(parse_potential("-x1^2", 1).value(vec({3.0})) == doctest::Approx(-9.0));
  CHECK(parse_potential("2^-1", 1).value(vec({0.0})) == doctest::Approx(0.5));
  CHECK(parse_potential("1e-3*x1", 1).value(vec({2.0})) == doctest::Approx(2e-3));
}

TEST_CASE("parse errors carry offsets") {
  auto offset_of = [](const char* src, int n) -> std::size_t {
    try {
      parse_potential(src, n);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  CHECK(offset_of("x1 +", 1) == 4);
  CHECK(offset_of("x1 + y", 1) == 5);
  CHECK(offset_of("x1 + x3", 2) == 5);
  CHECK(offset_of("sin x1", 1) == 4);
  CHECK(offset_of("(x1", 1) == 3);
  CHECK(offset_of("x1 $ 2", 1) == 3);
  CHECK(offset_of("", 1) == 0);
}

TEST_CASE("log outside its domain throws DomainError") {
  const Expression e = parse_potential("log(x1)", 1);
  CHECK_THROWS_AS(e.jet(vec({-1.0}), 2), DomainError);
  CHECK_THROWS_AS(parse_potential("sqrt(x1)", 1).jet(vec({0.0}), 1), DomainError);
}

TEST_CASE("to_string round-trips on random expressions") {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const std::string src = random_source(rng, n, 4);
    const Expression a = parse_potential(src, n);
    const Expression b = parse_potential(a.to_string(), n);
    CHECK_MESSAGE(a == b, src);
    CHECK(b.to_string() == a.to_string());
  }
}

TEST_CASE("jet derivatives agree with finite differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::string src = random_source(rng, 2, 3);
    const Expression e = parse_potential(src, 2);
    const Eigen::VectorXd x = vec({u(rng), u(rng)});
    const JetD j = e.jet(x, 2);
    const double h = 1e-3;
    // 5-point first difference, error O(h^4).
    auto d1 = [&](auto&& f, int i) {
      Eigen::VectorXd p1 = x, m1 = x, p2 = x, m2 = x;
      p1[i] += h;
      m1[i] -= h;
      p2[i] += 2 * h;
      m2[i] -= 2 * h;
      return (8 * (f(p1) - f(m1)) - (f(p2) - f(m2))) / (12 * h);
    };
    for (int i = 0; i < 2; ++i) {
      const double fd = d1([&](const Eigen::VectorXd& p) { return e.value(p); }, i);
      CHECK_MESSAGE(std::abs(fd - j.d({i})) < 1e-6 * std::max(1.0, std::abs(fd)), src);
      for (int k = 0; k < 2; ++k) {
        const double fd2 = d1([&](const Eigen::VectorXd& p) { return e.jet(p, 1).d({k}); }, i);
        CHECK_MESSAGE(std::abs(fd2 - j.d({i, k})) < 1e-6 * std::max(1.0, std::abs(fd2)), src);
      }
    }
  }
}
