#include <doctest.h>

#include "horco/ho_orders.hpp"
#include "horco/type_analysis.hpp"
#include "horco/validate.hpp"
#include "support.hpp"

using namespace horco;
using namespace horco::test;

namespace {

bool labels_include(const Derivation& d, const std::string& l)
{
  if (d.rule == l) {
    return true;
  }
  return std::any_of(d.children.begin(), d.children.end(), [&](const Derivation& c) { return labels_include(c, l); });
}

Trs load(const std::string& name)
{
  return parse_trs(read_file(corpus(name)));
}

} // namespace

TEST_CASE("horpo on the example rules")
{
  Trs pa = load("process_algebra.trs");
  CHECK_FALSE(horpo_gt(pa.params, pa.rules[0].lhs, pa.rules[0].rhs));
  Trs l = load("lists.trs");
  CHECK_FALSE(horpo_gt(l.params, l.rules[1].lhs, l.rules[1].rhs));
  auto d = horpo_gt(l.params, term(l, "lapply x (fcons F l)"), term(l, "x"));
  REQUIRE(d);
  CHECK(d->rule == "horpo1");
  CHECK(validate_derivation(*d, ValidationContext{l.params, {}}));
}

TEST_CASE("horpo precedence, status and application cases")
{
  Trs t = sys(R"(
sort B
symbol f : B -> B -> B status mul
symbol g : B -> B
symbol a : B
var x : B
var y : B
var F : B -> B
prec f > g
)");
  ValidationContext ctx{t.params, {}};
  auto d2 = horpo_gt(t.params, term(t, "f x y"), term(t, "g x"));
  REQUIRE(d2);
  CHECK(d2->rule == "horpo2");
  auto d3 = horpo_gt(t.params, term(t, "f (g x) y"), term(t, "f x y"));
  REQUIRE(d3);
  CHECK(d3->rule == "horpo3");
  auto d6 = horpo_gt(t.params, term(t, "F (g x)"), term(t, "F x"));
  REQUIRE(d6);
  CHECK(d6->rule == "horpo6");
  auto d7 = horpo_gt(t.params, term(t, "\\z:B. g (g z)"), term(t, "\\w:B. g w"));
  REQUIRE(d7);
  CHECK(d7->rule == "horpo7");
  for (const auto* d : {&*d2, &*d3, &*d6, &*d7}) {
    CHECK(validate_derivation(*d, ctx));
  }
  CHECK_FALSE(horpo_gt(t.params, term(t, "g x"), term(t, "g x")));
  CHECK_FALSE(horpo_gt(t.params, term(t, "f x y"), term(t, "g")));
}

TEST_CASE("closure membership for the example rules")
{
  Trs pa = load("process_algebra.trs");
  RuleSet rs = pa.rule_set();
  auto d = cc_ho_member(pa, rs, "seq", pa.rules[0].lhs.args(), pa.rules[0].rhs);
  REQUIRE(d);
  for (const char* l : {"arg", "decomp", "var", "app", "call", "lam", "prec", "base⊐"}) {
    CHECK(labels_include(*d, l));
  }
  CHECK(validate_derivation(*d, ValidationContext{pa.params, pa.rules}));

  Trs li = load("lists.trs");
  RuleSet lr = li.rule_set();
  auto e = cc_ho_member(li, lr, "lapply", li.rules[1].lhs.args(), li.rules[1].rhs);
  REQUIRE(e);
  CHECK(e->rule == "app");
  CHECK(labels_include(*e, "call"));
  CHECK(labels_include(*e, "base⊐"));

  Trs di = load("differentiation.trs");
  RuleSet dr = di.rule_set();
  auto f = cc_ho_member(di, dr, "D", di.rules[0].lhs.args(), di.rules[0].rhs);
  REQUIRE(f);
  CHECK(labels_include(*f, "red"));
  CHECK(validate_derivation(*f, ValidationContext{di.params, di.rules}));

  auto a = cc_ho_member(pa, rs, "seq", pa.rules[0].lhs.args(), term(pa, "x"));
  REQUIRE(a);
  CHECK(a->rule == "arg");
}

TEST_CASE("size ordering approximation")
{
  Trs pa = load("process_algebra.trs");
  RuleSet rs = pa.rule_set();
  std::map<std::string, Type> vars = pa.vars;
  vars["y"] = Type::base("D");
  Term py = parse_term("P y", pa.sig, vars);
  auto d = size_approx_gt(pa, rs, "seq", pa.rules[0].lhs.args(), term(pa, "sigma P"), py);
  REQUIRE(d);
  CHECK(d->rule == "base⊐");

  Trs di = load("differentiation.trs");
  RuleSet dr = di.rule_set();
  auto l = size_approx_gt(di, dr, "D", di.rules[0].lhs.args(), term(di, "\\x:R. times (F x) (G x)"), term(di, "F"));
  REQUIRE(l);
  CHECK(l->rule == "lam⊐");
  CHECK(labels_include(*l, "base⊐"));

  Trs li = load("lists.trs");
  RuleSet lr = li.rule_set();
  auto b = size_approx_gt(li, lr, "lapply", li.rules[1].lhs.args(), term(li, "fcons F l"), term(li, "l"));
  REQUIRE(b);
  CHECK(b->rule == "base⊐");
  CHECK(b->children.empty());
  CHECK(validate_derivation(*b, ValidationContext{li.params, {}}));
  CHECK(validate_derivation(*d, ValidationContext{pa.params, {}}));
  CHECK(validate_derivation(*l, ValidationContext{di.params, {}}));
}

TEST_CASE("accessible subterms of the same type are below")
{
  Trs t = sys(R"(
sort B
symbol c : B -> B -> B
symbol k : (B -> B) -> B -> B
symbol a : B
symbol r : B
var x : B
var y : B
var H : B -> B
)");
  RuleSet none;
  auto terms = enumerate_terms(t.sig, Type::base("B"), 4, {term(t, "x"), term(t, "y"), term(t, "H")},
                               EnumOptions{false});
  std::size_t checked = 0;
  for (const auto& g : terms) {
    if (!g.head().is_sym() || g.args().empty()) {
      continue;
    }
    auto accs = acc(g.head().name(), t.sig);
    auto as = g.args();
    for (auto i : accs) {
      if (as[i - 1].type().is_base()) {
        auto d = size_approx_gt(t, none, "r", {}, g, as[i - 1]);
        CHECK(d.has_value());
        ++checked;
      }
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("orienting rules")
{
  for (const char* f : {"differentiation.trs", "process_algebra.trs", "lists.trs"}) {
    Trs t = load(f);
    for (const auto& r : t.rules) {
      auto d = orient_rule(t, r);
      REQUIRE(d);
      CHECK(validate_orientation(*d, r, ValidationContext{t.params, t.rules}));
    }
  }
  Trs md = load("minus_div.trs");
  auto res = orient_rule_ex(md, md.rules[2]);
  CHECK_FALSE(res.derivation);
  CHECK_FALSE(res.reason.empty());
  Trs v = sys("sort B\nsymbol f : B -> B\nvar x : B\nvar y : B\n");
  CHECK_FALSE(orient_rule(v, Rule{term(v, "f x"), term(v, "y")}));
}

TEST_CASE("whorco and horco")
{
  Trs pa = load("process_algebra.trs");
  const Rule& r = pa.rules[0];
  std::map<std::string, Type> vars = pa.vars;
  vars["Q"] = Type::arrow(Type::base("D"), Type::base("P"));
  Substitution sigma{{"x", parse_term("seq x x", pa.sig, vars)}, {"P", parse_term("Q", pa.sig, vars)}};
  Term l = substitute(r.lhs, sigma), rr = substitute(r.rhs, sigma);
  auto w = whorco_gt(pa.params, l, rr);
  REQUIRE(w);
  CHECK(validate_derivation(*w, ValidationContext{pa.params, {}}));
  Term cl = Term::apply(pa.sig.symbol("seq"), std::vector<Term>{term(pa, "x"), l});
  Term cr = Term::apply(pa.sig.symbol("seq"), std::vector<Term>{term(pa, "x"), rr});
  auto h = horco_gt(pa.params, cl, cr);
  REQUIRE(h);
  CHECK(h->rule == "context");
  CHECK(validate_derivation(*h, ValidationContext{pa.params, {}}));
  CHECK_FALSE(whorco_gt(pa.params, l, l));
  CHECK_FALSE(horco_chain_gt(pa.params, cl, cl, 3));
  CHECK(horco_chain_gt(pa.params, cl, cr, 1) == horco_gt(pa.params, cl, cr).has_value());
}

TEST_CASE("horpo application case stays in its typed form")
{
  Trs t = sys(R"(
sort B
symbol f : B -> B -> B
symbol g : (B -> B) -> B
symbol a : B
var x : B
var F : B -> B
)");
  HorpoStats stats;
  Horpo h(t.params, &stats);
  std::vector<Term> pool{term(t, "x"), term(t, "F")};
  auto bs = enumerate_terms(t.sig, Type::base("B"), 4, pool);
  for (const auto& a : bs) {
    for (const auto& b : bs) {
      h.gt(a, b);
    }
  }
  CHECK(stats.case6_checks > 0);
  CHECK(stats.case6_trips == 0);
}
