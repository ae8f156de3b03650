#include <doctest.h>

#include "qlog/error.hpp"
#include "qlog/formula.hpp"
#include "support/random_formula.hpp"

using namespace qlog;

namespace {

Formula v(const char* name) { return Formula::variable(name); }

}  // namespace

TEST_CASE("parser honours precedence and associativity") {
  CHECK(parse_formula("p | q & r") == (v("p") | (v("q") & v("r"))));
  CHECK(parse_formula("~p & q") == (~v("p") & v("q")));
  CHECK(parse_formula("p & q & r") == ((v("p") & v("q")) & v("r")));
  CHECK(parse_formula("p | q | r") == ((v("p") | v("q")) | v("r")));
  CHECK(parse_formula("~~p") == ~~v("p"));
  CHECK(parse_formula(" ( p ) ") == v("p"));
  CHECK(parse_formula("1 & 0") == (Formula::top() & Formula::bottom()));
  CHECK(parse_formula("x_1 | yp") == (v("x_1") | v("yp")));
}

TEST_CASE("printer uses the fewest parentheses") {
  CHECK(to_string(parse_formula("(p & q) | r")) == "p & q | r");
  CHECK(to_string(parse_formula("p & (q | r)")) == "p & (q | r)");
  CHECK(to_string(parse_formula("p & (q & r)")) == "p & (q & r)");
  CHECK(to_string(parse_formula("(p | q) | r")) == "p | q | r");
  CHECK(to_string(parse_formula("~(p & q)")) == "~(p & q)");
  CHECK(to_string(parse_formula("~~p")) == "~~p");
  CHECK(to_string(Formula::top() | Formula::bottom()) == "1 | 0");
}

TEST_CASE("structural equality distinguishes commuted operands") {
  CHECK(parse_formula("p & q") != parse_formula("q & p"));
  CHECK(parse_formula("p & q").hash() == parse_formula("(p&q)").hash());
}

TEST_CASE("parse errors carry positions") {
  auto position_of = [](const char* text) -> std::size_t {
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(position_of("") == 0);
  CHECK(position_of("p &") == 3);
  CHECK(position_of("(p | q") == 6);
  CHECK(position_of("p q") == 2);
  CHECK(position_of("p # q") == 2);
  CHECK(position_of("P") == 0);
  CHECK_THROWS_AS(parse_formula("p |- q"), ParseError);
}

TEST_CASE("formula lists") {
  CHECK(parse_formula_list("  ").empty());
  const auto list = parse_formula_list("p, ~p | q");
  REQUIRE(list.size() == 2);
  CHECK(list[1] == (~v("p") | v("q")));
  try {
    parse_formula_list("p, q &");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("random formulas survive print and parse") {
  testing::FormulaGenerator gen({"p", "q", "r", "s1"}, 7, true);
  for (int i = 0; i < 500; ++i) {
    const Formula f = gen(6);
    CHECK(parse_formula(to_string(f)) == f);
  }
}

TEST_CASE("substitution is simultaneous") {
  const Substitution swap{{"p", v("q")}, {"q", v("p")}};
  CHECK(substitute(parse_formula("p & ~q"), swap) == parse_formula("q & ~p"));
  CHECK(swap.image("r") == v("r"));
  CHECK(substitute(Formula::top(), swap) == Formula::top());
}

TEST_CASE("compose agrees with sequential substitution") {
  testing::FormulaGenerator gen({"p", "q", "r"}, 11);
  for (int i = 0; i < 200; ++i) {
    const Substitution first{{"p", gen(2)}, {"q", gen(2)}};
    const Substitution second{{"q", gen(2)}, {"r", gen(2)}};
    const Formula f = gen(4);
    CHECK(substitute(substitute(f, first), second) == substitute(f, compose(first, second)));
  }
}

TEST_CASE("variables and subformulas") {
  const Formula f = parse_formula("p & (~q | p)");
  CHECK(variables(f) == VariableSet{"p", "q"});
  const std::vector<Formula> fs{f};
  const FormulaSet closure = subformula_closure(fs);
  CHECK(closure == FormulaSet{v("p"), v("q"), ~v("q"), ~v("q") | v("p"), f});
  CHECK(*closure.begin() == v("p"));
  CHECK(f.size() == 6);
  CHECK(f.height() == 3);
}

TEST_CASE("literal depth treats literals as depth zero") {
  CHECK(literal_depth(v("p")) == 0);
  CHECK(literal_depth(~v("p")) == 0);
  CHECK(literal_depth(~~v("p")) == 1);
  CHECK(literal_depth(v("p") | ~v("p")) == 1);
  CHECK(literal_depth(parse_formula("~(p & ~p)")) == 2);
}

TEST_CASE("formula universe") {
  CHECK(formula_universe({"p"}, 0) == FormulaSet{v("p"), ~v("p")});
  // {p, ~p}, their negations, and the eight binary combinations.
  CHECK(formula_universe({"p"}, 1).size() == 11);
  CHECK_THROWS_AS(formula_universe({"p", "q"}, 3, 1000), GuardError);

  // Every constant-free formula within the depth bound is present.
  const FormulaSet u = formula_universe({"p", "q"}, 2);
  for (const Formula& f : u) CHECK(literal_depth(f) <= 2);
  testing::FormulaGenerator gen({"p", "q"}, 3);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = gen(4);
    if (literal_depth(f) <= 2) CHECK(u.contains(f));
  }
}

TEST_CASE("conjoin associates to the left") {
  const std::vector<Formula> fs{v("a"), v("b"), v("c")};
  CHECK(conjoin(fs) == ((v("a") & v("b")) & v("c")));
  CHECK_THROWS_AS(conjoin(std::span<const Formula>{}), Error);
  CHECK(is_identifier("alpha"));
  CHECK_FALSE(is_identifier("1x"));
}
