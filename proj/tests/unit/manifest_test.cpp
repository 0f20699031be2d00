#include <doctest.h>

#include "hesse/manifest.hpp"

using namespace hesse;

TEST_CASE("manifest values") {
  const Manifest m = Manifest::parse(R"(# header
[potential]
expr = "x1^2 # not a comment"   # comment
n = 2
flag = true

[samples]
points = (0.1, 1.0), (-0.3, 0.8)
list = [1, 2.5, -3e-1]
names = ["a", "b c"]
)");
  CHECK(m.text("potential", "expr") == "x1^2 # not a comment");
  CHECK(m.integer("potential", "n") == 2);
  CHECK(m.boolean("potential", "flag"));
  const auto pts = m.points("samples", "points");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1][0] == -0.3);
  CHECK(m.numbers("samples", "list") == std::vector<double>{1, 2.5, -0.3});
  CHECK(m.texts("samples", "names") == std::vector<std::string>{"a", "b c"});
  CHECK(m.number_or("samples", "missing", 4.0) == 4.0);
  CHECK_FALSE(m.has("soliton"));
}

TEST_CASE("manifest errors name the line") {
  auto line_of = [](const char* text) {
    try {
      Manifest::parse(text);
    } catch (const ManifestError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("[a]\nx = 1\nx = 2\n") == 3);
  CHECK(line_of("[a]\n[a]\n") == 2);
  CHECK(line_of("x = 1\n") == 1);
  CHECK(line_of("[a]\njunk\n") == 2);
  CHECK(line_of("[a\n") == 1);
  CHECK(line_of("[a]\ns = \"open\n") == 2);

  const Manifest m = Manifest::parse("[a]\nn = 1.5\np = (1, x)\n");
  CHECK_THROWS_AS(m.integer("a", "n"), ManifestError);
  CHECK_THROWS_AS(m.points("a", "p"), ManifestError);
  CHECK_THROWS_AS(m.number("a", "missing"), ManifestError);
  CHECK_THROWS_AS(m.require_keys("a", {"n"}), ManifestError);
  CHECK_THROWS_AS(Manifest::load("/nonexistent/manifest"), ManifestError);
}
