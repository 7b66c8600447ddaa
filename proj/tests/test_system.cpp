#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dtk/errors.hpp"
#include "dtk/system.hpp"
#include "support.hpp"

using namespace dtk;
using dtk::testing::P;

namespace {

const char* kRotation = R"(# Unit-speed rotation.
name rotation;
vars x, y;
field x' = -y;
      y' = x;
ideal circle = x^2 + y^2 - 1;
)";

// 1-based line and column of the first occurrence of `needle`.
std::pair<std::size_t, std::size_t> locate(const std::string& text, const std::string& needle) {
  const std::size_t at = text.find(needle);
  REQUIRE(at != std::string::npos);
  std::size_t line = 1, last_newline = std::string::npos;
  for (std::size_t i = 0; i < at; ++i)
    if (text[i] == '\n') {
      ++line;
      last_newline = i;
    }
  const std::size_t column = last_newline == std::string::npos ? at + 1 : at - last_newline;
  return {line, column};
}

bool same(const DVariety& a, const DVariety& b) {
  return a.ring() == b.ring() && a.field() == b.field() &&
         a.variety().basis() == b.variety().basis();
}

}  // namespace

TEST_CASE("parse_system examples") {
  SUBCASE("rotation") {
    const SystemSpec s = parse_system(kRotation);
    CHECK(s.name == "rotation");
    CHECK(s.vars == std::vector<std::string>{"x", "y"});
    CHECK(s.params.empty());
    CHECK(s.field_exprs == std::vector<std::string>{"-y", "x"});
    REQUIRE(s.ideals.size() == 1);
    CHECK(s.ideals[0].name == "circle");
    CHECK(s.ideals[0].generators == std::vector<std::string>{"x^2 + y^2 - 1"});
    const Ring r({"x", "y"});
    CHECK(same(to_dvariety(s), DVariety::affine(r, {P("-y", r), P("x", r)})));
    const DVariety x = to_dvariety(s);
    CHECK(is_invariant(x, named_ideal(s, "circle")));
    CHECK_THROWS_AS(named_ideal(s, "nope"), InvalidArgument);
  }
  SUBCASE("components may come in any order and share a line") {
    const SystemSpec s = parse_system("vars x, y; field y' = x; x' = -y;");
    CHECK(s.field_exprs == std::vector<std::string>{"-y", "x"});
  }
  SUBCASE("parameters come first in the joint ring") {
    const SystemSpec s = parse_system("vars x, y; params t; field x' = -t*y; y' = t*x; variety x^2 + y^2 - 1;");
    CHECK(system_ring(s).names() == std::vector<std::string>{"t", "x", "y"});
    const DVariety x = to_dvariety(s);
    CHECK(x.field()[0].is_zero());
    CHECK(x.field()[1] == P("-t*y", x.ring()));
    CHECK(x.variety().contains(P("x^2 + y^2 - 1", x.ring())));
    const DFamily f = to_family(s);
    CHECK(f.parameter_count() == 1);
    CHECK(f.fiber_names() == std::vector<std::string>{"x", "y"});
  }
  SUBCASE("comments keep positions") {
    const std::string text = "vars x; # x' = junk; \nfield x' = x + q;";
    try {
      parse_system(text);
      FAIL("expected UnknownVariable");
    } catch (const UnknownVariable& e) {
      CHECK(e.name() == "q");
      const auto [line, col] = locate(text, "q;");
      CHECK(e.line() == line);
      CHECK(e.column() == col);
    }
  }
}

TEST_CASE("parse_system errors") {
  SUBCASE("missing field") {
    try {
      parse_system("vars x, y;\n");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(std::string(e.what()).find("field required") != std::string::npos);
    }
  }
  SUBCASE("undeclared variable in an expression") {
    const std::string text = "vars x, y;\nfield x' = -y;\n      y' = x + z^2;\n";
    try {
      parse_system(text);
      FAIL("expected UnknownVariable");
    } catch (const UnknownVariable& e) {
      CHECK(e.name() == "z");
      const auto [line, col] = locate(text, "z^2");
      CHECK(e.line() == line);
      CHECK(e.column() == col);
      CHECK(line == 3);
    }
  }
  SUBCASE("component for an undeclared variable") {
    const std::string text = "vars x;\nfield x' = 1;\n w' = 2;";
    try {
      parse_system(text);
      FAIL("expected UnknownVariable");
    } catch (const UnknownVariable& e) {
      CHECK(e.name() == "w");
      CHECK(e.line() == 3);
      CHECK(e.column() == 2);
    }
  }
  SUBCASE("malformed expression") {
    const std::string text = "vars x;\nfield x' = (x + 1;";
    try {
      parse_system(text);
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() > 10);
    }
  }
  CHECK_THROWS_AS(parse_system("vars x, y; field x' = y;"), InvalidArgument);  // arity
  CHECK_THROWS_AS(parse_system("vars x, x; field x' = 1;"), InvalidArgument);
  CHECK_THROWS_AS(parse_system("vars x; params x; field x' = 1;"), InvalidArgument);
  CHECK_THROWS_AS(parse_system("vars x; field x' = 1"), SyntaxError);  // no ';'
  CHECK_THROWS_AS(parse_system("vars x; field x' = 1; x' = 2;"), SyntaxError);
  CHECK_THROWS_AS(parse_system("vars x; frobnicate; field x' = 1;"), SyntaxError);
  CHECK_THROWS_AS(parse_system("vars x; x' = 1;"), SyntaxError);
  CHECK_THROWS_AS(parse_system("vars x; field x' 1;"), SyntaxError);
  CHECK_THROWS_AS(parse_system("vars 2x; field x' = 1;"), SyntaxError);
  CHECK_THROWS_AS(parse_system("vars x; field x' = 1; ideal = x;"), SyntaxError);
  CHECK_THROWS_AS(parse_system("vars x; field x' = 1; ideal a = x; ideal a = x^2;"), SyntaxError);
  CHECK_THROWS_AS(parse_system("field x' = 1;"), SyntaxError);
  CHECK_THROWS_AS(parse_system(""), SyntaxError);
  // A declared variety must be invariant.
  CHECK_THROWS_AS(to_dvariety(parse_system("vars x, y; field x' = 1; y' = 0; variety x;")), NotInvariant);
}

TEST_CASE("serialize round trip") {
  const SystemSpec s = parse_system(kRotation);
  const SystemSpec back = parse_system(serialize_system(s));
  CHECK(back.name == s.name);
  CHECK(back.vars == s.vars);
  CHECK(back.field_exprs == s.field_exprs);
  CHECK(back.ideals.size() == 1);
  CHECK(back.ideals[0].generators == s.ideals[0].generators);

  std::mt19937 rng(404);
  const Ring r({"x", "y"});
  for (int trial = 0; trial < 40; ++trial) {
    const DVariety x =
        DVariety::affine(r, {testing::random_poly(rng, r, 3, 4, 9), testing::random_poly(rng, r, 3, 4, 9)});
    const SystemSpec spec = system_from(x, "random");
    CHECK(same(to_dvariety(parse_system(serialize_system(spec))), x));
  }
}

TEST_CASE("product round trip") {
  const SystemSpec s = parse_system(kRotation);
  for (int n = 1; n <= 3; ++n) {
    const SystemSpec prod = product_system(s, n);
    CHECK(prod.name == "rotation^" + std::to_string(n));
    CHECK(prod.ideals.empty());
    const DVariety expected = product(to_dvariety(s), n);
    CHECK(same(to_dvariety(parse_system(serialize_system(prod))), expected));
    CHECK(prod.vars.size() == 2 * static_cast<std::size_t>(n));
  }
  const SystemSpec on_circle = parse_system("vars x, y; field x' = -y; y' = x; variety x^2 + y^2 - 1;");
  const DVariety sq = to_dvariety(parse_system(serialize_system(product_system(on_circle, 2))));
  CHECK(same(sq, product(to_dvariety(on_circle), 2)));
  CHECK(sq.variety().basis().size() == 2);
  CHECK_THROWS_AS(product_system(parse_system("vars x; params t; field x' = t;"), 2), InvalidArgument);
}

TEST_CASE("parse_rational_function") {
  const Ring r({"x", "y"});
  const auto F = [&](const std::string& s) { return parse_rational_function(s, r); };
  CHECK(F("x/y") == RatFunction(P("x", r), P("y", r)));
  CHECK(F("(x^2 - 1)/(x - 1)") == RatFunction(P("x + 1", r)));
  CHECK(F("1/2*x") == RatFunction(P("1/2*x", r)));
  CHECK(F("x^2 + 3/4") == RatFunction(P("x^2 + 3/4", r)));
  CHECK(F("(x*y - y)/(x*y - x)") == RatFunction(P("x*y - y", r), P("x*y - x", r)));
  CHECK(F("x / (2*y)") == RatFunction(P("x", r), P("2*y", r)));
  CHECK_THROWS_AS(F("x/y/x"), SyntaxError);
  CHECK_THROWS_AS(F("x/0"), Error);
  CHECK_THROWS_AS(F("x/w"), UnknownVariable);
  try {
    F("x/(y + w)");
    FAIL("expected UnknownVariable");
  } catch (const UnknownVariable& e) {
    CHECK(e.position() == 7);
  }
  // Printed rational functions parse back to themselves.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    RatPoly d = testing::random_poly(rng, r, 2);
    if (d.is_zero()) continue;
    const RatFunction f(testing::random_poly(rng, r, 2), d);
    CHECK(F(f.to_string()) == f);
  }
}
