#include <doctest.h>

#include "horco/term.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace horco;
using namespace horco::test;

namespace {

const char* kNat = R"(
sort B
symbol 0 : B
symbol s : B -> B
symbol m : B -> B -> B
symbol f : B -> B -> B
symbol a : B
symbol b : B
var x : B
var y : B
var z : B
var F : B -> B
var G : B -> B
)";

} // namespace

TEST_CASE("types of symbols and abstractions")
{
  Trs d = parse_trs(read_file(corpus("differentiation.trs")));
  CHECK(d.sig.symbol("D").type().to_string() == "(R->R)->R->R");
  CHECK(d.sig.symbol("D").type().arity() == 2);
  Trs t = sys(kNat);
  Term id = Term::lam("x", Type::base("B"), Term::var("x", Type::base("B")));
  CHECK(id.type().to_string() == "B->B");
  CHECK(term(t, "s 0").type() == Type::base("B"));
  CHECK_THROWS_AS(Term::app(t.sig.symbol("s"), t.sig.symbol("s")), TypeError);
  CHECK_THROWS_AS(Term::app(t.sig.symbol("0"), t.sig.symbol("0")), TypeError);
}

TEST_CASE("free variables")
{
  Trs t = sys(kNat);
  CHECK(free_vars(term(t, "\\x:B. F x")) == std::set<std::string>{"F"});
  CHECK(free_vars(term(t, "0")).empty());
  Trs pa = parse_trs(read_file(corpus("process_algebra.trs")));
  CHECK(free_vars(pa.rules[0].lhs) == std::set<std::string>{"P", "x"});
}

TEST_CASE("alpha equivalence")
{
  Trs t = sys(kNat);
  CHECK(alpha_eq(term(t, "\\x:B. x"), term(t, "\\y:B. y")));
  CHECK_FALSE(alpha_eq(term(t, "\\x:B. x"), term(t, "\\x:B. s x")));
  CHECK_FALSE(alpha_eq(term(t, "\\x:B. F x"), term(t, "\\x:B. G x")));
  CHECK_FALSE(alpha_eq(term(t, "\\x:B. y"), term(t, "\\y:B. y")));
  CHECK(alpha_key(term(t, "\\z:B. m z y")) == alpha_key(term(t, "\\x:B. m x y")));
}

TEST_CASE("capture-avoiding substitution")
{
  Trs t = sys(kNat);
  CHECK(alpha_eq(substitute(term(t, "m x 0"), {{"x", term(t, "s y")}}), term(t, "m (s y) 0")));
  Term r = substitute(term(t, "\\x:B. F x"), {{"F", term(t, "\\z:B. z")}});
  CHECK(alpha_eq(r, term(t, "\\x:B. (\\z:B. z) x")));
  Term c = substitute(term(t, "\\x:B. m y x"), {{"y", term(t, "x")}});
  CHECK(alpha_eq(c, term(t, "\\w:B. m x w")));
  CHECK(free_vars(c) == std::set<std::string>{"x"});
  CHECK_THROWS_AS(substitute(term(t, "x"), {{"x", term(t, "s")}}), TypeError);
}

TEST_CASE("substitution composes for disjoint supports")
{
  Trs t = sys(kNat);
  auto terms = enumerate_terms(t.sig, Type::base("B"), 4, {term(t, "x"), term(t, "y")});
  Substitution sigma{{"x", term(t, "s y")}};
  Substitution rho{{"y", term(t, "m z 0")}};
  Substitution both{{"x", substitute(term(t, "s y"), rho)}, {"y", term(t, "m z 0")}};
  for (const auto& u : terms) {
    CHECK(alpha_eq(substitute(substitute(u, sigma), rho), substitute(u, both)));
  }
}

TEST_CASE("positions")
{
  Trs t = sys(R"(
sort B
symbol f : B -> B
symbol g : B -> B
symbol a : B
symbol b : B
symbol s : B -> B
symbol 0 : B
)");
  Term fga = term(t, "f (g a)");
  CHECK(alpha_eq(subterm_at(fga, {1, 1}), term(t, "a")));
  CHECK(alpha_eq(replace_at(fga, {1}, term(t, "b")), term(t, "f b")));
  auto ps = subterm_positions(term(t, "s 0"));
  REQUIRE(ps.size() == 2);
  CHECK(ps[0].first.empty());
  CHECK(ps[1].first == Position{1});
  CHECK(alpha_eq(ps[1].second, term(t, "0")));
  CHECK_THROWS_AS(subterm_at(fga, {2}), std::out_of_range);
  CHECK_THROWS_AS(replace_at(fga, {1}, term(t, "f")), TypeError);
}

TEST_CASE("beta reducts")
{
  Trs t = sys(kNat);
  auto r = beta_reducts(term(t, "(\\x:B. f x x) a"));
  REQUIRE(r.size() == 1);
  CHECK(alpha_eq(r[0], term(t, "f a a")));
  CHECK(beta_reducts(term(t, "f a b")).empty());
  Trs d = parse_trs(read_file(corpus("differentiation.trs")));
  auto dr = beta_reducts(parse_term("(\\x:R. times (F x) (G x)) y", d.sig, {{"F", d.vars["F"]}, {"G", d.vars["G"]},
                                                                          {"y", Type::base("R")}}));
  REQUIRE(dr.size() == 1);
  CHECK(to_string(dr[0]) == "times (F y) (G y)");
}

TEST_CASE("types are preserved by substitution, replacement and beta")
{
  Trs t = sys(kNat);
  std::vector<Term> pool{term(t, "x"), term(t, "F")};
  for (const auto& ty : {Type::base("B"), Type::arrow(Type::base("B"), Type::base("B"))}) {
    for (const auto& u : enumerate_terms(t.sig, ty, 4, pool)) {
      CHECK(substitute(u, {{"x", term(t, "s 0")}}).type() == u.type());
      for (const auto& [p, sub] : subterm_positions(u)) {
        if (sub.type() == Type::base("B")) {
          CHECK(replace_at(u, p, term(t, "a")).type() == u.type());
        }
      }
      for (const auto& r : beta_reducts(u)) {
        CHECK(r.type() == u.type());
      }
    }
  }
}

TEST_CASE("alpha equivalence is an equivalence on sampled triples")
{
  Trs t = sys(kNat);
  auto ts = enumerate_terms(t.sig, Type::arrow(Type::base("B"), Type::base("B")), 4, {term(t, "x")});
  for (std::size_t i = 0; i < ts.size(); i += 7) {
    CHECK(alpha_eq(ts[i], ts[i]));
    for (std::size_t j = 0; j < ts.size(); j += 11) {
      CHECK(alpha_eq(ts[i], ts[j]) == alpha_eq(ts[j], ts[i]));
      CHECK(alpha_eq(ts[i], ts[j]) == (alpha_key(ts[i]) == alpha_key(ts[j])));
    }
  }
}

TEST_CASE("enumeration")
{
  Trs t = sys(R"(
sort B
symbol 0 : B
symbol s : B -> B
)");
  auto ts = enumerate_terms(t.sig, Type::base("B"), 3, {}, EnumOptions{false});
  REQUIRE(ts.size() == 3);
  std::set<std::string> printed;
  for (const auto& u : ts) {
    printed.insert(to_string(u));
  }
  CHECK(printed == std::set<std::string>{"0", "s 0", "s (s 0)"});
  // With abstractions, (\x:B. x) 0 and (\x:B. 0) 0 also have size 3.
  CHECK(enumerate_terms(t.sig, Type::base("B"), 3, {}).size() == 5);
  auto fs = enumerate_terms(t.sig, Type::arrow(Type::base("B"), Type::base("B")), 1, {}, EnumOptions{false});
  REQUIRE(fs.size() == 1);
  CHECK(to_string(fs[0]) == "s");
}

TEST_CASE("enumeration counts match the recursive counter")
{
  Trs t = sys(R"(
sort B
symbol 0 : B
symbol s : B -> B
symbol m : B -> B -> B
var x : B
var y : B
)");
  for (std::size_t nvars : {0u, 2u}) {
    std::vector<Term> vars;
    if (nvars) {
      vars = {term(t, "x"), term(t, "y")};
    }
    auto expect = count_terms(1 + nvars, 1, 1, 5);
    auto ts = enumerate_terms(t.sig, Type::base("B"), 5, vars, EnumOptions{false});
    std::vector<std::uint64_t> got(6, 0);
    std::set<std::string> keys;
    for (const auto& u : ts) {
      REQUIRE(u.size() <= 5);
      ++got[u.size()];
      keys.insert(alpha_key(u));
    }
    CHECK(keys.size() == ts.size());
    for (std::size_t n = 1; n <= 5; ++n) {
      CHECK(got[n] == expect[n]);
    }
  }
}

TEST_CASE("enumeration with abstractions has no alpha duplicates")
{
  Trs t = sys(kNat);
  auto ts = enumerate_terms(t.sig, Type::arrow(Type::base("B"), Type::base("B")), 5, {term(t, "x")});
  std::set<std::string> keys;
  for (const auto& u : ts) {
    CHECK(u.size() <= 5);
    CHECK(u.type().to_string() == "B->B");
    keys.insert(alpha_key(u));
  }
  CHECK(keys.size() == ts.size());
  CHECK(keys.count(alpha_key(term(t, "\\z:B. z"))) == 1);
}
