#include <doctest.h>

#include "starchart/error.hpp"
#include "starchart/generators.hpp"
#include "starchart/syntax.hpp"

using namespace starchart;

namespace {
Expr a() { return Expr::atom("a"); }
Expr b() { return Expr::atom("b"); }
Expr c() { return Expr::atom("c"); }
}  // namespace

TEST_CASE("parse: grammar productions") {
  CHECK(parse("a*b") == Expr::star(a(), b()));
  CHECK(parse("(a b)*(b a)") == Expr::star(Expr::seq(a(), b()), Expr::seq(b(), a())));
  CHECK(parse("a + 0") == Expr::sum(a(), Expr::zero()));
  CHECK(parse("a.b") == Expr::seq(a(), b()));
  CHECK(parse(" a  +b+ c ") == Expr::sum(a(), Expr::sum(b(), c())));
  // sequencing groups to the left, star binds tighter than sequencing
  CHECK(parse("a b c") == Expr::seq(Expr::seq(a(), b()), c()));
  CHECK(parse("a b*c") == Expr::seq(a(), Expr::star(b(), c())));
  CHECK(parse("(a*b)*c") == Expr::star(Expr::star(a(), b()), c()));
}

TEST_CASE("parse: adjacent letters are separate actions unless declared otherwise") {
  CHECK(parse("(aa)*0") == Expr::star(Expr::seq(a(), a()), Expr::zero()));
  CHECK(parse("ab0") == Expr::seq(a(), Expr::atom("b0")));
  CHECK(parse("a_1b") == Expr::seq(Expr::atom("a_1"), b()));
  Alphabet decl({"a", "ab", "b"});
  CHECK(parse("ab", decl) == Expr::atom("ab"));
  CHECK(parse("a b", decl) == Expr::seq(a(), b()));
  CHECK(parse("a0", Alphabet({"a"})) == Expr::seq(a(), Expr::zero()));
}

TEST_CASE("parse: errors carry positions") {
  try {
    parse("a + * b");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("(a + b"), SyntaxError);
  CHECK_THROWS_AS(parse("a*b*c"), SyntaxError);
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("A"), SyntaxError);
  CHECK_THROWS_AS(parse("a + c", Alphabet({"a", "b"})), SyntaxError);
}

TEST_CASE("render: minimal parentheses") {
  CHECK(render(Expr::star(a(), b())) == "a*b");
  CHECK(render(Expr::sum(a(), Expr::sum(b(), c()))) == "a + b + c");
  CHECK(render(Expr::seq(Expr::sum(a(), b()), c())) == "(a + b)c");
  CHECK(render(Expr::sum(Expr::sum(a(), b()), c())) == "(a + b) + c");
  CHECK(render(Expr::seq(a(), Expr::seq(b(), c()))) == "a(b c)");
  CHECK(render(Expr::star(Expr::star(a(), b()), c())) == "(a*b)*c");
}

TEST_CASE("render/parse round trip on random expressions") {
  Rng rng(7);
  Alphabet alpha({"a", "b", "c"});
  for (int i = 0; i < 500; ++i) {
    auto e = random_expr(rng, alpha, 5);
    CHECK(parse(render(e), alpha) == e);
    CHECK(parse(render(e)) == e);
  }
  for (const auto& e : enumerate_exprs(Alphabet({"a"}), 7)) CHECK(parse(render(e)) == e);
}

TEST_CASE("gsum: right-nested in list order") {
  CHECK(gsum({}) == Expr::zero());
  CHECK(gsum({a()}) == a());
  CHECK(gsum({a(), b(), c()}) == Expr::sum(a(), Expr::sum(b(), c())));
  // summands in order
  Rng rng(3);
  Alphabet alpha({"a", "b"});
  for (int i = 0; i < 50; ++i) {
    std::vector<Expr> xs;
    for (int k = 0; k <= i % 5; ++k) xs.push_back(random_expr(rng, alpha, 3));
    Expr s = gsum(xs);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      REQUIRE(s.kind() == ExprKind::Sum);
      CHECK(s.lhs() == xs[k]);
      s = s.rhs();
    }
    CHECK(s == xs.back());
  }
}

TEST_CASE("star_height") {
  CHECK(star_height(a()) == 0);
  CHECK(star_height(Expr::star(a(), b())) == 1);
  CHECK(star_height(Expr::seq(Expr::star(a(), b()), Expr::sum(c(), Expr::zero()))) == 1);
  CHECK(star_height(parse("(a*a)*b")) == 2);
}

TEST_CASE("size_bound") {
  CHECK(size_bound(Expr::zero()) == 1);
  CHECK(size_bound(a()) == 1);
  CHECK(size_bound(Expr::seq(a(), b())) == 2);
  CHECK(size_bound(Expr::star(a(), b())) == 2);
  CHECK(size_bound(parse("(a b)c")) == 2 + 2 * 1);
}

TEST_CASE("measure invariants on random expressions") {
  Rng rng(11);
  Alphabet alpha({"a", "b"});
  auto star_free = [](const Expr& e) {
    std::vector<Expr> todo{e};
    while (!todo.empty()) {
      auto x = todo.back();
      todo.pop_back();
      if (x.kind() == ExprKind::Star) return false;
      if (x.kind() == ExprKind::Sum || x.kind() == ExprKind::Seq) {
        todo.push_back(x.lhs());
        todo.push_back(x.rhs());
      }
    }
    return true;
  };
  for (int i = 0; i < 300; ++i) {
    auto e = random_expr(rng, alpha, 5);
    CHECK(size_bound(e) >= 1);
    CHECK((star_height(e) == 0) == star_free(e));
  }
}

TEST_CASE("alphabet") {
  auto alpha = Alphabet::from_list("a, b,c");
  CHECK(alpha.size() == 3);
  CHECK(alpha.index("c") == 2);
  CHECK_THROWS_AS(alpha.index("d"), InputError);
  CHECK_THROWS_AS(Alphabet::from_list("a,a"), InputError);
  CHECK_THROWS_AS(Alphabet::from_list("A"), InputError);
  CHECK(alpha.merged(Alphabet({"d", "a"})).names() == std::vector<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("structural equality and hashing") {
  CHECK(parse("a + b") != parse("b + a"));
  CHECK(parse("a + b").hash() == parse("a+b").hash());
  CHECK(parse("(a + b) + c") != parse("a + b + c"));
  CHECK(parse("a b").node_count() == 3);
}
