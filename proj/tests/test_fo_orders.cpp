#include <doctest.h>

#include "horco/fo_orders.hpp"
#include "horco/validate.hpp"
#include "support.hpp"

using namespace horco;
using namespace horco::test;

namespace {

const char* kSmall = R"(
sort B
symbol 0 : B
symbol s : B -> B
symbol m : B -> B -> B status mul
var x : B
var y : B
prec m > s
)";

bool labels_include(const Derivation& d, const std::string& l)
{
  if (d.rule == l) {
    return true;
  }
  return std::any_of(d.children.begin(), d.children.end(), [&](const Derivation& c) { return labels_include(c, l); });
}

} // namespace

TEST_CASE("rpo on the minus and div rules")
{
  Trs t = parse_trs(read_file(corpus("minus_div.trs")));
  auto d1 = rpo_gt(t.params, t.rules[0].lhs, t.rules[0].rhs);
  REQUIRE(d1);
  CHECK(d1->rule == "rpo1");
  auto d2 = rpo_gt(t.params, t.rules[1].lhs, t.rules[1].rhs);
  REQUIRE(d2);
  CHECK(d2->rule == "rpo3");
  CHECK_FALSE(rpo_gt(t.params, t.rules[2].lhs, t.rules[2].rhs));
  ValidationContext ctx{t.params, {}};
  CHECK(validate_derivation(*d1, ctx));
  CHECK(validate_derivation(*d2, ctx));
  CHECK_THROWS_AS(rpo_gt(t.params, term(t, "s"), term(t, "s")), std::invalid_argument);
}

TEST_CASE("rco examples")
{
  Trs t = sys(R"(
sort B
symbol f : B -> B -> B
symbol g : B -> B
symbol h : B -> B
symbol a : B
symbol b : B
)");
  auto d = rco_gt(t.params, term(t, "f a b"), term(t, "a"));
  REQUIRE(d);
  CHECK(d->rule == "arg");
  auto r = rco_gt(t.params, term(t, "h (g a)"), term(t, "a"));
  REQUIRE(r);
  CHECK(r->rule == "red");
  CHECK(validate_derivation(*r, ValidationContext{t.params, {}}));
  Term x = Term::var("x", Type::base("B"));
  CHECK_THROWS_AS(rco_gt(t.params, x, term(t, "a")), std::invalid_argument);

  Trs md = parse_trs(read_file(corpus("minus_div.trs")));
  for (std::size_t i = 0; i < md.rules.size(); ++i) {
    bool rpo = rpo_gt(md.params, md.rules[i].lhs, md.rules[i].rhs).has_value();
    bool rco = rco_gt(md.params, md.rules[i].lhs, md.rules[i].rhs).has_value();
    CHECK(rpo == rco);
  }
}

TEST_CASE("first-order closure membership")
{
  Trs t = parse_trs(read_file(corpus("minus_div.trs")));
  std::vector<Term> ts{term(t, "s x"), term(t, "s y")};
  auto d = cc_fo_member(t, "minus", ts, term(t, "minus x y"));
  REQUIRE(d);
  CHECK(d->rule == "call");
  CHECK(labels_include(*d, "decomp"));
  CHECK(validate_derivation(*d, ValidationContext{t.params, t.rules}));
  auto a = cc_fo_member(t, "minus", ts, term(t, "s x"));
  REQUIRE(a);
  CHECK(a->rule == "arg");
  auto p = cc_fo_member(t, "div", ts, term(t, "s (s x)"));
  REQUIRE(p);
  CHECK(p->rule == "prec");
  CHECK(validate_derivation(*p, ValidationContext{t.params, t.rules}));
  CHECK_THROWS_AS(cc_fo_member(t, "minus", {term(t, "x")}, term(t, "x")), std::invalid_argument);
}

TEST_CASE("fixpoint oracle basics")
{
  Trs t = sys(kSmall);
  auto empty = rco_fixpoint_oracle(t.params, {});
  CHECK(empty.universe.empty());
  CHECK(empty.pair_count() == 0);
  auto uni = enumerate_terms(t.sig, Type::base("B"), 4, {term(t, "x")}, EnumOptions{false});
  auto rel = rco_fixpoint_oracle(t.params, uni);
  CHECK(rel.holds(term(t, "m x 0"), term(t, "x")));
  CHECK(rel.holds(term(t, "s (s 0)"), term(t, "0")));
  CHECK_FALSE(rel.holds(term(t, "s 0"), term(t, "s 0")));
  Rpo rpo(t.params);
  for (const auto& a : rel.universe) {
    if (!a.head().is_sym()) {
      continue;
    }
    for (const auto& b : rel.universe) {
      CHECK(rel.holds(a, b) == rpo.gt(a, b));
    }
  }
}

TEST_CASE("single-step and decomp-free fixpoints coincide at size 4")
{
  Trs t = sys(kSmall);
  auto uni = enumerate_terms(t.sig, Type::base("B"), 4, {term(t, "x"), term(t, "y")}, EnumOptions{false});
  auto full = rco_fixpoint_oracle(t.params, uni);
  auto single = rco_fixpoint_oracle(t.params, uni, FixpointVariant::SingleStep);
  auto nodecomp = rco_fixpoint_oracle(t.params, uni, FixpointVariant::Transitive, false);
  CHECK(full.gt == single.gt);
  CHECK(full.gt == nodecomp.gt);
}

TEST_CASE("rpo is irreflexive and its derivations validate")
{
  Trs t = sys(kSmall);
  auto uni = enumerate_terms(t.sig, Type::base("B"), 4, {term(t, "x")}, EnumOptions{false});
  Rpo rpo(t.params);
  ValidationContext ctx{t.params, {}};
  std::size_t positive = 0;
  for (const auto& a : uni) {
    CHECK_FALSE(rpo.gt(a, a));
    for (const auto& b : uni) {
      if (auto d = rpo.derive(a, b)) {
        ++positive;
        CHECK(validate_derivation(*d, ctx));
      }
    }
  }
  CHECK(positive > 0);
}

TEST_CASE("rco derivations validate")
{
  Trs t = sys(kSmall);
  auto uni = enumerate_terms(t.sig, Type::base("B"), 4, {term(t, "x")}, EnumOptions{false});
  Rco rco(t.params);
  ValidationContext ctx{t.params, {}};
  for (const auto& a : uni) {
    if (!a.head().is_sym()) {
      continue;
    }
    for (const auto& b : uni) {
      if (auto d = rco.derive(a, b)) {
        CHECK(validate_derivation(*d, ctx));
      }
    }
  }
}
