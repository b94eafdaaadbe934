#include <doctest.h>

#include "horco/rewrite.hpp"
#include "support.hpp"

using namespace horco;
using namespace horco::test;

namespace {

const char* kSys = R"(
sort B
symbol 0 : B
symbol s : B -> B
symbol minus : B -> B -> B
symbol f : B -> B -> B
symbol a : B
symbol b : B
var x : B
var y : B
var F : B -> B
rule minus x 0 -> x
rule minus (s x) (s y) -> minus x y
)";

std::set<std::string> printed(const std::vector<Term>& ts)
{
  std::set<std::string> out;
  for (const auto& t : ts) {
    out.insert(to_string(t));
  }
  return out;
}

} // namespace

TEST_CASE("rule invariants")
{
  Trs t = sys(kSys);
  CHECK_NOTHROW(make_rule(term(t, "minus x 0"), term(t, "x")));
  CHECK_THROWS_AS(make_rule(term(t, "minus x 0"), term(t, "y")), std::invalid_argument);
  CHECK_THROWS_AS(make_rule(term(t, "x"), term(t, "x")), std::invalid_argument);
  CHECK_THROWS_AS(make_rule(term(t, "minus x"), term(t, "x")), std::invalid_argument);
}

TEST_CASE("syntactic matching")
{
  Trs t = sys(kSys);
  auto s1 = match_syntactic(term(t, "f x x"), term(t, "f a a"));
  REQUIRE(s1);
  CHECK(alpha_eq(s1->at("x"), term(t, "a")));
  CHECK_FALSE(match_syntactic(term(t, "f x x"), term(t, "f a b")));
  auto s2 = match_syntactic(term(t, "F x"), term(t, "(\\z:B. z) y"));
  REQUIRE(s2);
  CHECK(alpha_eq(s2->at("F"), term(t, "\\z:B. z")));
  CHECK(alpha_eq(s2->at("x"), term(t, "y")));
  CHECK(match_syntactic(term(t, "F x"), term(t, "s 0")));
  CHECK_FALSE(match_syntactic(term(t, "F x"), term(t, "0")));
}

TEST_CASE("matching is checked by substitution")
{
  Trs t = sys(kSys);
  std::vector<Term> pats{term(t, "f x x"), term(t, "f x y"), term(t, "s (F x)"), term(t, "minus (s x) y")};
  auto subjects = enumerate_terms(t.sig, Type::base("B"), 4, {term(t, "x")});
  for (const auto& p : pats) {
    for (const auto& s : subjects) {
      if (auto sigma = match_syntactic(p, s)) {
        CHECK(alpha_eq(substitute(p, *sigma), s));
      }
    }
  }
}

TEST_CASE("constant and defined symbols")
{
  auto md = parse_trs(read_file(corpus("minus_div.trs")));
  auto sp = constant_split(md);
  CHECK(sp.constant == std::set<std::string>{"0", "s"});
  CHECK(sp.defined == std::set<std::string>{"div", "minus"});
  auto pa = constant_split(parse_trs(read_file(corpus("process_algebra.trs"))));
  CHECK(pa.constant == std::set<std::string>{"sigma"});
  CHECK(pa.defined == std::set<std::string>{"seq"});
  Trs none = sys("sort B\nsymbol c : B\n");
  CHECK(constant_split(none).constant == std::set<std::string>{"c"});
}

TEST_CASE("one-step reducts")
{
  Trs t = sys(kSys);
  RuleSet rs = t.rule_set();
  CHECK(printed(one_step_reducts(rs, term(t, "minus (s 0) (s 0)"), ReductionKind::Rules)) ==
        std::set<std::string>{"minus 0 0"});
  CHECK(printed(one_step_reducts(RuleSet{}, term(t, "(\\z:B. z) a"), ReductionKind::Both)) ==
        std::set<std::string>{"a"});
  CHECK(one_step_reducts(rs, term(t, "x"), ReductionKind::Rules).empty());
  CHECK(one_step_reducts(rs, term(t, "(\\z:B. z) a"), ReductionKind::Rules).empty());
}

TEST_CASE("reducts preserve types")
{
  Trs t = sys(kSys);
  RuleSet rs = t.rule_set();
  for (const auto& u : enumerate_terms(t.sig, Type::base("B"), 5, {term(t, "x")})) {
    for (const auto& r : one_step_reducts(rs, u, ReductionKind::Both)) {
      CHECK(r.type() == u.type());
    }
  }
}

TEST_CASE("bounded reachability")
{
  Trs t = sys(kSys);
  RuleSet rs = t.rule_set();
  CHECK(printed(reducts_plus(rs, term(t, "minus (s x) (s 0)"), ReachBudget{2, 64})) ==
        std::set<std::string>{"minus x 0", "x"});
  CHECK(printed(reducts_plus(rs, term(t, "(\\u:B. u) ((\\v:B. v) a)"), ReachBudget{2, 64})) ==
        std::set<std::string>{"(\\v:B. v) a", "a"});
  CHECK(reducts_plus(rs, term(t, "s 0"), ReachBudget{}).empty());
  auto path = reduction_path(rs, term(t, "minus (s x) (s 0)"), term(t, "x"), ReachBudget{});
  REQUIRE(path);
  CHECK(path->size() == 3);
}

TEST_CASE("one step of reducts_plus is one_step_reducts")
{
  Trs t = sys(kSys);
  RuleSet rs = t.rule_set();
  for (const auto& u : enumerate_terms(t.sig, Type::base("B"), 5, {term(t, "x")})) {
    CHECK(printed(reducts_plus(rs, u, ReachBudget{1, 64})) ==
          printed(one_step_reducts(rs, u, ReductionKind::Both)));
  }
}

TEST_CASE("reachability is monotone in the budget")
{
  Trs t = sys(kSys);
  RuleSet rs = t.rule_set();
  auto ts = enumerate_terms(t.sig, Type::base("B"), 6, {term(t, "x")});
  for (std::size_t i = 0; i < ts.size(); i += 5) {
    auto small = printed(reducts_plus(rs, ts[i], ReachBudget{1, 5}));
    auto big = printed(reducts_plus(rs, ts[i], ReachBudget{3, 8}));
    for (const auto& s : small) {
      CHECK(big.count(s) == 1);
    }
  }
}
