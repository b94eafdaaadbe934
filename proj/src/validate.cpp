#include "horco/validate.hpp"

#include <functional>
#include <set>

#include "horco/type_analysis.hpp"

namespace horco {

namespace {

using JK = JudgementKind;

struct Failure {
  std::string message;
};

std::string key2(const Term& a, const Term& b)
{
  return alpha_key(a) + "\x1f" + alpha_key(b);
}

bool is_fo(const Term& t)
{
  if (t.is_lam() || !t.type().is_base() || t.head().is_lam()) {
    return false;
  }
  auto as = t.args();
  if (t.head().is_var() && !as.empty()) {
    return false;
  }
  for (const auto& a : as) {
    if (!is_fo(a)) {
      return false;
    }
  }
  return true;
}

bool proper_subterm(const Term& big, const Term& small)
{
  for (const auto& a : big.args()) {
    if (alpha_eq(a, small) || proper_subterm(a, small)) {
      return true;
    }
  }
  return false;
}

bool fv_within(const Term& small, const Term& big)
{
  auto fb = free_vars(big);
  for (const auto& x : free_vars(small)) {
    if (!fb.count(x)) {
      return false;
    }
  }
  return true;
}

class Checker {
public:
  explicit Checker(const ValidationContext& ctx) : ctx_(ctx) {}

  ValidationResult run(const Derivation& d)
  {
    ValidationResult res;
    check(d, res);
    return res;
  }

private:
  bool check(const Derivation& d, ValidationResult& res)
  {
    for (const auto& c : d.children) {
      if (!check(c, res)) {
        return false;
      }
    }
    std::string why = node_error(d);
    if (!why.empty()) {
      res.ok = false;
      res.rule = d.rule;
      res.conclusion = to_string(d.conclusion);
      res.message = why;
      return false;
    }
    return true;
  }

  PrecResult cmp(const std::string& f, const std::string& g) const
  {
    const auto& p = ctx_.params.prec;
    if (!p.has_symbol(f) || !p.has_symbol(g)) {
      return f == g ? PrecResult::Equivalent : PrecResult::NotGreaterOrEquiv;
    }
    return p.cmp(f, g);
  }

  static std::set<std::string> facts(const Derivation& d, JK kind)
  {
    std::set<std::string> out;
    for (const auto& c : d.children) {
      if (c.conclusion.kind == kind) {
        out.insert(key2(c.conclusion.left, c.conclusion.right));
      }
    }
    return out;
  }

  /// Member/Approx children must share the parent's root.
  static std::string same_root(const Derivation& d)
  {
    for (const auto& c : d.children) {
      JK k = c.conclusion.kind;
      if ((k == JK::Member || k == JK::FoMember || k == JK::Approx) && !alpha_eq(c.conclusion.root, d.conclusion.root)) {
        return "child judgement has a different closure root";
      }
    }
    return {};
  }

  static bool has_member(const Derivation& d, JK kind, const Term& u)
  {
    for (const auto& c : d.children) {
      if (c.conclusion.kind == kind && alpha_eq(c.conclusion.right, u)) {
        return true;
      }
    }
    return false;
  }

  static bool has_approx(const Derivation& d, const Term& a, const Term& b)
  {
    for (const auto& c : d.children) {
      if (c.conclusion.kind == JK::Approx && alpha_eq(c.conclusion.left, a) && alpha_eq(c.conclusion.right, b)) {
        return true;
      }
    }
    return false;
  }

  static bool has_steps(const Derivation& d, const Term& a, const Term& b)
  {
    for (const auto& c : d.children) {
      const auto& p = c.conclusion.path;
      if (c.conclusion.kind == JK::Steps && p.size() >= 2 && alpha_eq(p.front(), a) && alpha_eq(p.back(), b)) {
        return true;
      }
    }
    return false;
  }

  bool ext(const std::string& f, const std::vector<Term>& ts, const std::vector<Term>& us,
           const std::function<bool(const Term&, const Term&)>& rel) const
  {
    return status_ext(ctx_.params.status_of(f), ts, us, rel);
  }

  std::string node_error(const Derivation& d)
  {
    const Judgement& j = d.conclusion;
    const std::string& r = d.rule;
    if (r == "rpo1" || r == "rpo2" || r == "rpo3") {
      return check_rpo(d);
    }
    if (r.rfind("horpo", 0) == 0) {
      return check_horpo(d);
    }
    if (r == "context") {
      return check_context(d);
    }
    if (j.kind == JK::Steps) {
      return r == "red" ? check_steps(d) : "reduction steps must be labelled red";
    }
    if (j.kind == JK::Rco) {
      return check_rco(d);
    }
    if (j.kind == JK::FoMember || j.kind == JK::Member) {
      if (!j.root.valid() || !j.root.head().is_sym()) {
        return "closure root must be headed by a symbol";
      }
      if (auto e = same_root(d); !e.empty()) {
        return e;
      }
      return j.kind == JK::FoMember ? check_fo_member(d) : check_member(d);
    }
    if (j.kind == JK::Approx) {
      if (!j.root.valid() || !j.root.head().is_sym()) {
        return "closure root must be headed by a symbol";
      }
      if (auto e = same_root(d); !e.empty()) {
        return e;
      }
      return check_approx(d);
    }
    return "label " + r + " does not apply to this judgement";
  }

  // -- first-order --------------------------------------------------------------

  std::string check_rpo(const Derivation& d)
  {
    const Judgement& j = d.conclusion;
    if (j.kind != JK::Rpo) {
      return "rpo labels need an rpo judgement";
    }
    const Term &t = j.left, &u = j.right;
    if (!is_fo(t) || !is_fo(u) || !t.head().is_sym()) {
      return "rpo compares first-order terms with a symbol-headed left side";
    }
    auto ts = t.args();
    auto f = facts(d, JK::Rpo);
    if (d.rule == "rpo1") {
      for (const auto& ti : ts) {
        if (alpha_eq(ti, u) || f.count(key2(ti, u))) {
          return {};
        }
      }
      return "no argument is greater than or equal to the right side";
    }
    if (!u.head().is_sym()) {
      return "right side is not headed by a symbol";
    }
    auto us = u.args();
    auto pc = cmp(t.head().name(), u.head().name());
    if (d.rule == "rpo2" && pc != PrecResult::Greater) {
      return "precedence does not put " + t.head().name() + " above " + u.head().name();
    }
    if (d.rule == "rpo3" && pc != PrecResult::Equivalent) {
      return "symbols are not equivalent in the precedence";
    }
    for (const auto& uj : us) {
      if (!f.count(key2(t, uj))) {
        return "missing premise " + to_string(t) + " > " + to_string(uj);
      }
    }
    if (d.rule == "rpo3" &&
        !ext(t.head().name(), ts, us, [&](const Term& a, const Term& b) { return f.count(key2(a, b)) > 0; })) {
      return "status comparison of the arguments fails";
    }
    return {};
  }

  std::string check_rco(const Derivation& d)
  {
    const Judgement& j = d.conclusion;
    const Term &t = j.left, &u = j.right;
    if (!is_fo(t) || !is_fo(u) || !t.head().is_sym()) {
      return "rco compares first-order terms with a symbol-headed left side";
    }
    auto ts = t.args();
    auto f = facts(d, JK::Rco);
    if (d.rule == "arg") {
      for (const auto& ti : ts) {
        if (alpha_eq(ti, u)) {
          return {};
        }
      }
      return "right side is not an argument";
    }
    if (d.rule == "red") {
      for (const auto& c : d.children) {
        if (c.conclusion.kind == JK::Rco && alpha_eq(c.conclusion.left, t) &&
            f.count(key2(c.conclusion.right, u))) {
          return {};
        }
      }
      return "no intermediate term links the two premises";
    }
    if (d.rule == "prec" || d.rule == "call") {
      if (!u.head().is_sym()) {
        return "right side is not headed by a symbol";
      }
      auto us = u.args();
      auto pc = cmp(t.head().name(), u.head().name());
      if (d.rule == "prec" && pc != PrecResult::Greater) {
        return "precedence does not put " + t.head().name() + " above " + u.head().name();
      }
      if (d.rule == "call" && pc != PrecResult::Equivalent) {
        return "symbols are not equivalent in the precedence";
      }
      for (const auto& uj : us) {
        if (!f.count(key2(t, uj))) {
          return "missing premise " + to_string(t) + " > " + to_string(uj);
        }
      }
      if (d.rule == "call" &&
          !ext(t.head().name(), ts, us, [&](const Term& a, const Term& b) { return f.count(key2(a, b)) > 0; })) {
        return "status comparison of the arguments fails";
      }
      return {};
    }
    return "label " + d.rule + " does not apply to rco";
  }

  std::string check_fo_member(const Derivation& d)
  {
    const Judgement& j = d.conclusion;
    const Term& u = j.right;
    auto ts = j.root.args();
    const std::string& f = j.root.head().name();
    if (d.rule == "arg") {
      for (const auto& ti : ts) {
        if (alpha_eq(ti, u)) {
          return {};
        }
      }
      return "term is not an argument of the root";
    }
    if (d.rule == "decomp") {
      for (const auto& c : d.children) {
        if (c.conclusion.kind == JK::FoMember && c.conclusion.right.head().is_sym()) {
          for (const auto& a : c.conclusion.right.args()) {
            if (alpha_eq(a, u)) {
              return {};
            }
          }
        }
      }
      return "term is not an argument of a member";
    }
    if (d.rule == "red") {
      for (const auto& c : d.children) {
        if (c.conclusion.kind == JK::FoMember && has_steps(d, c.conclusion.right, u)) {
          return {};
        }
      }
      return "no member reduces to the term";
    }
    if (d.rule == "prec" || d.rule == "call") {
      if (!u.head().is_sym()) {
        return "term is not headed by a symbol";
      }
      auto pc = cmp(f, u.head().name());
      if (d.rule == "prec" && pc != PrecResult::Greater) {
        return "precedence does not put " + f + " above " + u.head().name();
      }
      if (d.rule == "call" && pc != PrecResult::Equivalent) {
        return "symbols are not equivalent in the precedence";
      }
      auto us = u.args();
      for (const auto& uj : us) {
        if (!has_member(d, JK::FoMember, uj)) {
          return "missing premise for argument " + to_string(uj);
        }
      }
      if (d.rule == "call" && !ext(f, ts, us, [&](const Term& a, const Term& b) {
            return proper_subterm(a, b) || has_steps(d, a, b);
          })) {
        return "status comparison of the arguments fails";
      }
      return {};
    }
    return "label " + d.rule + " does not apply to the first-order closure";
  }

  // -- higher-order closure -------------------------------------------------------

  std::string check_member(const Derivation& d)
  {
    const Judgement& j = d.conclusion;
    const Term& u = j.right;
    auto ts = j.root.args();
    const std::string& f = j.root.head().name();
    auto forbidden = free_vars(j.root);
    if (d.rule == "arg") {
      for (const auto& ti : ts) {
        if (alpha_eq(ti, u)) {
          return {};
        }
      }
      return "term is not an argument of the root";
    }
    if (d.rule == "decomp") {
      for (const auto& c : d.children) {
        const Term& w = c.conclusion.right;
        if (c.conclusion.kind != JK::Member || !w.head().is_sym()) {
          continue;
        }
        auto ws = w.args();
        for (std::size_t i : acc(w.head().type())) {
          if (i <= ws.size() && alpha_eq(ws[i - 1], u)) {
            return {};
          }
        }
      }
      return "term is not an accessible argument of a member";
    }
    if (d.rule == "prec") {
      if (!u.is_sym()) {
        return "prec introduces a bare symbol";
      }
      if (cmp(f, u.name()) != PrecResult::Greater) {
        return "precedence does not put " + f + " above " + u.name();
      }
      return {};
    }
    if (d.rule == "call") {
      if (!u.head().is_sym()) {
        return "term is not headed by a symbol";
      }
      const Term& g = u.head();
      if (cmp(f, g.name()) != PrecResult::Equivalent) {
        return "symbols are not equivalent in the precedence";
      }
      auto us = u.args();
      bool full = us.size() == g.type().arity() && ts.size() == j.root.head().type().arity();
      if (us.empty() || (us.size() != ts.size() && !full)) {
        return "argument counts are not comparable";
      }
      for (const auto& uj : us) {
        bool ok = has_member(d, JK::Member, uj);
        for (std::size_t i = 0; !ok && i < ts.size(); ++i) {
          ok = has_approx(d, ts[i], uj);
        }
        if (!ok) {
          return "missing premise for argument " + to_string(uj);
        }
      }
      if (!ext(f, ts, us, [&](const Term& a, const Term& b) { return has_steps(d, a, b) || has_approx(d, a, b); })) {
        return "status comparison of the arguments fails";
      }
      return {};
    }
    if (d.rule == "red") {
      for (const auto& c : d.children) {
        if (c.conclusion.kind == JK::Member && has_steps(d, c.conclusion.right, u)) {
          return {};
        }
      }
      return "no member reduces to the term";
    }
    if (d.rule == "app") {
      if (!u.is_app()) {
        return "term is not an application";
      }
      if (!has_member(d, JK::Member, u.fun()) || !has_member(d, JK::Member, u.arg())) {
        return "missing premise for a part of the application";
      }
      return {};
    }
    if (d.rule == "var") {
      if (!u.is_var()) {
        return "term is not a variable";
      }
      if (forbidden.count(u.name())) {
        return "variable " + u.name() + " is free in the root arguments";
      }
      return {};
    }
    if (d.rule == "lam") {
      if (!u.is_lam()) {
        return "term is not an abstraction";
      }
      if (forbidden.count(u.name())) {
        return "bound variable " + u.name() + " is free in the root arguments";
      }
      if (!has_member(d, JK::Member, u.body())) {
        return "missing premise for the body";
      }
      return {};
    }
    return "label " + d.rule + " does not apply to the closure";
  }

  std::string check_approx(const Derivation& d)
  {
    const Judgement& j = d.conclusion;
    const Term &a = j.left, &b = j.right;
    auto forbidden = free_vars(j.root);
    if (d.rule == "base⊐") {
      if (!a.head().is_sym() || !a.type().is_base()) {
        return "left side must be a symbol applied to all its arguments";
      }
      if (b.type() != a.type()) {
        return "both sides must have the same base type";
      }
      auto as = a.args();
      auto cs = b.args();
      auto accessible = acc(a.head().type());
      for (std::size_t k = 0; k <= cs.size(); ++k) {
        Term prefix = Term::apply(b.head(), std::span<const Term>(cs.data(), k));
        for (std::size_t i : accessible) {
          if (i > as.size() || !alpha_eq(prefix, as[i - 1])) {
            continue;
          }
          bool ok = true;
          for (std::size_t m = k; m < cs.size() && ok; ++m) {
            ok = has_member(d, JK::Member, cs[m]);
          }
          if (ok) {
            return {};
          }
        }
      }
      return "right side is not an accessible argument applied to closure members";
    }
    if (d.rule == "lam⊐") {
      if (!a.is_lam()) {
        return "left side is not an abstraction";
      }
      const std::string& x = a.name();
      if (occurs_free(x, b) || forbidden.count(x)) {
        return "bound variable " + x + " is not fresh";
      }
      if (!b.type().is_arrow() || b.type().dom() != a.binder_type()) {
        return "right side cannot be applied to the bound variable";
      }
      Term bx = Term::app(b, Term::var(x, a.binder_type()));
      return has_approx(d, a.body(), bx) ? std::string{} : "missing premise for the body";
    }
    if (d.rule == "red⊐") {
      for (const auto& c : d.children) {
        if (c.conclusion.kind == JK::Approx && alpha_eq(c.conclusion.left, a) && has_steps(d, c.conclusion.right, b)) {
          return {};
        }
      }
      return "no approximation reduces to the right side";
    }
    if (d.rule == "trans⊐") {
      for (const auto& c : d.children) {
        if (c.conclusion.kind == JK::Approx && alpha_eq(c.conclusion.left, a) && has_approx(d, c.conclusion.right, b)) {
          return {};
        }
      }
      return "no intermediate term links the two premises";
    }
    return "label " + d.rule + " does not apply to the size approximation";
  }

  std::string check_steps(const Derivation& d)
  {
    const auto& p = d.conclusion.path;
    if (p.size() < 2) {
      return "a reduction needs at least one step";
    }
    RuleSet rules(ctx_.rules);
    for (const auto& c : d.children) {
      const Judgement& cj = c.conclusion;
      if (cj.kind != JK::Member) {
        return "only closure memberships may justify extra rules";
      }
      if (!cj.root.head().is_sym() || cj.root.type() != cj.right.type() || !fv_within(cj.right, cj.root)) {
        return "justified pair " + to_string(cj.root) + " > " + to_string(cj.right) + " is not a rule";
      }
      rules.add(Rule{cj.root, cj.right});
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      bool ok = false;
      for (const auto& r : one_step_reducts(rules, p[i], ReductionKind::Both)) {
        if (alpha_eq(r, p[i + 1])) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        return to_string(p[i + 1]) + " is not a one-step reduct of " + to_string(p[i]);
      }
    }
    return {};
  }

  // -- HORPO and context ----------------------------------------------------------

  std::string check_horpo(const Derivation& d)
  {
    const Judgement& j = d.conclusion;
    if (j.kind != JK::Horpo) {
      return "horpo labels need a horpo judgement";
    }
    const Term &t = j.left, &u = j.right;
    if (t.type() != u.type()) {
      return "both sides must have the same type";
    }
    auto f = facts(d, JK::Horpo);
    auto ge = [&](const Term& a, const Term& b) { return alpha_eq(a, b) || f.count(key2(a, b)) > 0; };
    auto gt = [&](const Term& a, const Term& b) { return f.count(key2(a, b)) > 0; };
    const std::string& r = d.rule;
    if (r == "horpo6") {
      if (!t.is_app() || !u.is_app() || t.fun().type() != u.fun().type()) {
        return "case 6 compares applications with matching function types";
      }
      bool e1 = alpha_eq(t.fun(), u.fun()), e2 = alpha_eq(t.arg(), u.arg());
      if (e1 && e2) {
        return "the applications are equal";
      }
      if (!ge(t.fun(), u.fun()) || !ge(t.arg(), u.arg())) {
        return "a component comparison is missing";
      }
      return {};
    }
    if (r == "horpo7") {
      if (!t.is_lam() || !u.is_lam() || t.name() != u.name() || t.binder_type() != u.binder_type()) {
        return "case 7 compares abstractions over the same variable";
      }
      return gt(t.body(), u.body()) ? std::string{} : "missing premise for the bodies";
    }
    if (!t.head().is_sym()) {
      return "left side is not headed by a symbol";
    }
    const std::string& fn = t.head().name();
    auto ts = t.args();
    auto p_of = [&](const Term& v) {
      if (gt(t, v)) {
        return true;
      }
      for (const auto& tj : ts) {
        if (ge(tj, v)) {
          return true;
        }
      }
      return false;
    };
    if (r == "horpo1") {
      for (const auto& ti : ts) {
        if (ge(ti, u)) {
          return {};
        }
      }
      return "no argument is greater than or equal to the right side";
    }
    if (r == "horpo5") {
      if (!u.is_app()) {
        return "right side is not an application";
      }
      auto as = u.args();
      for (std::size_t k = 0; k < as.size(); ++k) {
        bool ok = p_of(Term::apply(u.head(), std::span<const Term>(as.data(), k)));
        for (std::size_t m = k; m < as.size() && ok; ++m) {
          ok = p_of(as[m]);
        }
        if (ok) {
          return {};
        }
      }
      return "no splitting of the application has all pieces below";
    }
    if (!u.head().is_sym()) {
      return "right side is not headed by a symbol";
    }
    auto us = u.args();
    auto pc = cmp(fn, u.head().name());
    Status st = ctx_.params.status_of(fn);
    auto all_p = [&] {
      for (const auto& uj : us) {
        if (!p_of(uj)) {
          return false;
        }
      }
      return true;
    };
    if (r == "horpo2") {
      if (pc != PrecResult::Greater) {
        return "precedence does not put " + fn + " above " + u.head().name();
      }
      return all_p() ? std::string{} : "some argument of the right side is not below";
    }
    if (r == "horpo3" || r == "horpo4") {
      if (pc != PrecResult::Equivalent) {
        return "symbols are not equivalent in the precedence";
      }
      if ((r == "horpo3") != (st == Status::Mul)) {
        return "status does not match the case";
      }
      if (!status_ext(st, ts, us, gt)) {
        return "status comparison of the arguments fails";
      }
      if (r == "horpo4" && !all_p()) {
        return "some argument of the right side is not below";
      }
      return {};
    }
    return "unknown horpo case " + r;
  }

  std::string check_context(const Derivation& d)
  {
    const Judgement& j = d.conclusion;
    if (j.kind != JK::Horco) {
      return "context needs a horco judgement";
    }
    if (d.children.size() != 1 || d.children[0].conclusion.kind != JK::Member) {
      return "context needs exactly one closure membership";
    }
    const Judgement& m = d.children[0].conclusion;
    if (!m.root.head().is_sym() || m.root.type() != m.right.type() || !fv_within(m.right, m.root)) {
      return "the inner pair violates the variable or type condition";
    }
    Term t = j.left, u = j.right;
    while (true) {
      if (alpha_eq(t, m.root) && alpha_eq(u, m.right)) {
        return {};
      }
      if (t.is_app() && u.is_app()) {
        if (alpha_eq(t.fun(), u.fun())) {
          t = t.arg();
          u = u.arg();
          continue;
        }
        if (alpha_eq(t.arg(), u.arg())) {
          t = t.fun();
          u = u.fun();
          continue;
        }
        break;
      }
      if (t.is_lam() && u.is_lam() && t.name() == u.name() && t.binder_type() == u.binder_type()) {
        t = t.body();
        u = u.body();
        continue;
      }
      break;
    }
    return "the sides do not differ exactly at the inner pair";
  }

  const ValidationContext& ctx_;
};

} // namespace

ValidationResult validate_derivation(const Derivation& d, const ValidationContext& ctx)
{
  try {
    Checker c(ctx);
    return c.run(d);
  } catch (const std::exception& e) {
    ValidationResult r;
    r.ok = false;
    r.rule = d.rule;
    r.conclusion = to_string(d.conclusion);
    r.message = std::string("ill-formed node: ") + e.what();
    return r;
  }
}

ValidationResult validate_orientation(const Derivation& d, const Rule& rule, const ValidationContext& ctx)
{
  const Judgement& j = d.conclusion;
  ValidationResult r;
  auto fail = [&](const std::string& msg) {
    r.ok = false;
    r.rule = d.rule;
    r.conclusion = to_string(j);
    r.message = msg;
    return r;
  };
  if (j.kind != JK::Member && j.kind != JK::FoMember && j.kind != JK::Rpo && j.kind != JK::Rco &&
      j.kind != JK::Horpo) {
    return fail("orientation must conclude a comparison or a closure membership");
  }
  const Term& l = (j.kind == JK::Member || j.kind == JK::FoMember) ? j.root : j.left;
  if (!alpha_eq(l, rule.lhs) || !alpha_eq(j.right, rule.rhs)) {
    return fail("conclusion does not match the rule");
  }
  if (rule.lhs.type() != rule.rhs.type() || !fv_within(rule.rhs, rule.lhs)) {
    return fail("rule violates the variable or type condition");
  }
  return validate_derivation(d, ctx);
}

} // namespace horco
