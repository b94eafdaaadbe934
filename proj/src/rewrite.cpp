#include "horco/rewrite.hpp"

#include <algorithm>
#include <unordered_map>

namespace horco {

std::optional<std::string> rule_violation(const Term& lhs, const Term& rhs)
{
  if (!lhs.head().is_sym()) {
    return "left-hand side " + to_string(lhs) + " is not headed by a symbol";
  }
  if (lhs.type() != rhs.type()) {
    return "sides have different types " + lhs.type().to_string() + " and " + rhs.type().to_string();
  }
  auto lv = free_vars(lhs);
  for (const auto& x : free_vars(rhs)) {
    if (!lv.count(x)) {
      return "variable " + x + " of the right-hand side does not occur in the left-hand side";
    }
  }
  return std::nullopt;
}

Rule make_rule(Term lhs, Term rhs)
{
  if (auto why = rule_violation(lhs, rhs)) {
    throw std::invalid_argument(*why);
  }
  return Rule{std::move(lhs), std::move(rhs)};
}

RuleSet::RuleSet(const std::vector<Rule>& rules)
{
  for (const auto& r : rules) {
    add(r);
  }
}

void RuleSet::add(Rule r)
{
  by_head_[r.lhs.head().name()].push_back(rules_.size());
  rules_.push_back(std::move(r));
}

const std::vector<std::size_t>& RuleSet::with_head(const std::string& f) const
{
  static const std::vector<std::size_t> none;
  auto it = by_head_.find(f);
  return it == by_head_.end() ? none : it->second;
}

namespace {

bool escapes(const Term& s, const std::vector<std::string>& bound_s)
{
  if (bound_s.empty()) {
    return false;
  }
  for (const auto& x : free_vars(s)) {
    if (std::find(bound_s.begin(), bound_s.end(), x) != bound_s.end()) {
      return true;
    }
  }
  return false;
}

bool match_rec(const Term& p, const Term& s, std::vector<std::string>& bp, std::vector<std::string>& bs,
               Substitution& sigma)
{
  if (p.type() != s.type()) {
    return false;
  }
  switch (p.kind()) {
  case TermKind::Var: {
    auto ip = std::find(bp.rbegin(), bp.rend(), p.name());
    if (ip != bp.rend()) {
      if (!s.is_var()) {
        return false;
      }
      auto is = std::find(bs.rbegin(), bs.rend(), s.name());
      return is != bs.rend() && (ip - bp.rbegin()) == (is - bs.rbegin());
    }
    if (escapes(s, bs)) {
      return false;
    }
    auto it = sigma.find(p.name());
    if (it != sigma.end()) {
      return alpha_eq(it->second, s);
    }
    sigma.emplace(p.name(), s);
    return true;
  }
  case TermKind::Sym:
    return s.is_sym() && s.name() == p.name();
  case TermKind::App:
    return s.is_app() && match_rec(p.fun(), s.fun(), bp, bs, sigma) && match_rec(p.arg(), s.arg(), bp, bs, sigma);
  case TermKind::Lam: {
    if (!s.is_lam() || s.binder_type() != p.binder_type()) {
      return false;
    }
    bp.push_back(p.name());
    bs.push_back(s.name());
    bool ok = match_rec(p.body(), s.body(), bp, bs, sigma);
    bp.pop_back();
    bs.pop_back();
    return ok;
  }
  }
  return false;
}

void reducts_rec(const RuleSet& rules, const Term& t, ReductionKind kind, std::vector<Term>& out)
{
  bool beta = kind != ReductionKind::Rules;
  bool rw = kind != ReductionKind::Beta;
  if (beta && t.is_app() && t.fun().is_lam()) {
    const Term& l = t.fun();
    out.push_back(substitute(l.body(), {{l.name(), t.arg()}}));
  }
  if (rw && t.head().is_sym()) {
    std::size_t len = t.spine_length();
    for (std::size_t i : rules.with_head(t.head().name())) {
      const Rule& r = rules.rules()[i];
      if (r.lhs.spine_length() != len) {
        continue;
      }
      if (auto sigma = match_syntactic(r.lhs, t)) {
        out.push_back(substitute(r.rhs, *sigma));
      }
    }
  }
  if (t.is_app()) {
    std::vector<Term> sub;
    reducts_rec(rules, t.fun(), kind, sub);
    for (auto& r : sub) {
      out.push_back(Term::app(r, t.arg()));
    }
    sub.clear();
    reducts_rec(rules, t.arg(), kind, sub);
    for (auto& r : sub) {
      out.push_back(Term::app(t.fun(), r));
    }
  } else if (t.is_lam()) {
    std::vector<Term> sub;
    reducts_rec(rules, t.body(), kind, sub);
    for (auto& r : sub) {
      out.push_back(Term::lam(t.name(), t.binder_type(), r));
    }
  }
}

} // namespace

std::optional<Substitution> match_syntactic(const Term& pattern, const Term& subject)
{
  std::vector<std::string> bp, bs;
  Substitution sigma;
  if (!match_rec(pattern, subject, bp, bs, sigma)) {
    return std::nullopt;
  }
  return sigma;
}

SymbolSplit constant_split(const Trs& trs)
{
  SymbolSplit out;
  for (const auto& r : trs.rules) {
    out.defined.insert(r.lhs.head().name());
  }
  for (const auto& [name, ty] : trs.sig.symbols()) {
    if (!out.defined.count(name)) {
      out.constant.insert(name);
    }
  }
  return out;
}

std::vector<Term> one_step_reducts(const RuleSet& rules, const Term& t, ReductionKind kind)
{
  std::vector<Term> raw;
  reducts_rec(rules, t, kind, raw);
  std::set<std::string> seen;
  std::vector<Term> out;
  for (auto& r : raw) {
    if (seen.insert(alpha_key(r)).second) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

ReachResult reach(const RuleSet& rules, const Term& t, const ReachBudget& budget, ReductionKind kind)
{
  ReachResult res;
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<std::ptrdiff_t> frontier{-1};
  for (std::size_t step = 0; step < budget.max_steps && !frontier.empty(); ++step) {
    std::vector<std::ptrdiff_t> next;
    for (std::ptrdiff_t from : frontier) {
      const Term& src = from < 0 ? t : res.terms[from];
      for (Term& r : one_step_reducts(rules, src, kind)) {
        if (r.size() > budget.max_term_size) {
          res.truncated = true;
          continue;
        }
        auto key = alpha_key(r);
        if (seen.count(key)) {
          continue;
        }
        seen.emplace(key, res.terms.size());
        next.push_back(static_cast<std::ptrdiff_t>(res.terms.size()));
        res.terms.push_back(std::move(r));
        res.parent.push_back(from);
      }
    }
    frontier = std::move(next);
  }
  if (!frontier.empty()) {
    for (std::ptrdiff_t from : frontier) {
      if (!one_step_reducts(rules, res.terms[from], kind).empty()) {
        res.truncated = true;
        break;
      }
    }
  }
  return res;
}

std::vector<Term> reducts_plus(const RuleSet& rules, const Term& t, const ReachBudget& budget)
{
  return reach(rules, t, budget).terms;
}

std::optional<std::vector<Term>> reduction_path(const RuleSet& rules, const Term& from, const Term& to,
                                                const ReachBudget& budget, bool* truncated)
{
  ReachResult r = reach(rules, from, budget);
  if (truncated) {
    *truncated = r.truncated;
  }
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    if (!alpha_eq(r.terms[i], to)) {
      continue;
    }
    std::vector<Term> path;
    for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i); k >= 0; k = r.parent[k]) {
      path.push_back(r.terms[k]);
    }
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
  }
  return std::nullopt;
}

} // namespace horco
