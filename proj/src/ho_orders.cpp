#include "horco/ho_orders.hpp"

#include <algorithm>
#include <stdexcept>

#include "horco/type_analysis.hpp"

namespace horco {

PrecResult safe_cmp(const OrderParams& params, const std::string& f, const std::string& g)
{
  if (!params.prec.has_symbol(f) || !params.prec.has_symbol(g)) {
    return f == g ? PrecResult::Equivalent : PrecResult::NotGreaterOrEquiv;
  }
  return params.prec.cmp(f, g);
}

namespace {

std::string pair_key(const Term& a, const Term& b)
{
  return alpha_key(a) + "\x1f" + alpha_key(b);
}

Term prefix_of(const Term& head, const std::vector<Term>& args, std::size_t k)
{
  return Term::apply(head, std::span<const Term>(args.data(), k));
}

void names_rec(const Term& t, std::set<std::string>& out)
{
  switch (t.kind()) {
  case TermKind::Var:
    out.insert(t.name());
    break;
  case TermKind::Sym:
    break;
  case TermKind::App:
    names_rec(t.fun(), out);
    names_rec(t.arg(), out);
    break;
  case TermKind::Lam:
    out.insert(t.name());
    names_rec(t.body(), out);
    break;
  }
}

std::set<std::string> all_var_names(const Term& t)
{
  std::set<std::string> out;
  names_rec(t, out);
  return out;
}

Term rename_binder_body(const Term& lam, const std::string& z)
{
  if (lam.name() == z) {
    return lam.body();
  }
  return substitute(lam.body(), {{lam.name(), Term::var(z, lam.binder_type())}});
}

/// A name usable as the common binder for two abstractions.
std::string common_binder(const Term& a, const Term& b, const std::set<std::string>& avoid)
{
  if (a.name() == b.name() && !avoid.count(a.name())) {
    return a.name();
  }
  std::set<std::string> av = avoid;
  for (const auto& x : free_vars(a)) {
    av.insert(x);
  }
  for (const auto& x : free_vars(b)) {
    av.insert(x);
  }
  if (!av.count(a.name())) {
    return a.name();
  }
  return fresh_name(a.name(), av);
}

} // namespace

// ---- HORPO -----------------------------------------------------------------

bool Horpo::p_holds(const Term& t, const std::vector<Term>& ts, const Term& v)
{
  if (gt(t, v)) {
    return true;
  }
  return std::any_of(ts.begin(), ts.end(), [&](const Term& tj) { return ge(tj, v); });
}

std::optional<std::size_t> Horpo::case5_split(const Term& t, const std::vector<Term>& ts, const Term& u)
{
  const Term& h = u.head();
  auto as = u.args();
  for (std::size_t k = 0; k < as.size(); ++k) {
    if (!p_holds(t, ts, prefix_of(h, as, k))) {
      continue;
    }
    bool ok = true;
    for (std::size_t j = k; j < as.size() && ok; ++j) {
      ok = p_holds(t, ts, as[j]);
    }
    if (ok) {
      return k;
    }
  }
  return std::nullopt;
}

bool Horpo::gt(const Term& t, const Term& u)
{
  if (t.type() != u.type()) {
    return false;
  }
  auto key = pair_key(t, u);
  if (auto it = memo_.find(key); it != memo_.end()) {
    return it->second;
  }
  memo_[key] = false;
  bool res = false;
  if (t.head().is_sym()) {
    const std::string& f = t.head().name();
    auto ts = t.args();
    res = std::any_of(ts.begin(), ts.end(), [&](const Term& ti) { return ge(ti, u); });
    if (!res && u.head().is_sym()) {
      auto us = u.args();
      auto pc = safe_cmp(params_, f, u.head().name());
      auto all_p = [&] {
        return std::all_of(us.begin(), us.end(), [&](const Term& uj) { return p_holds(t, ts, uj); });
      };
      TermRel rel = [this](const Term& a, const Term& b) { return gt(a, b); };
      if (pc == PrecResult::Greater) {
        res = all_p();
      } else if (pc == PrecResult::Equivalent) {
        Status st = params_.status_of(f);
        res = status_ext(st, ts, us, rel) && (st == Status::Mul || all_p());
      }
    }
    if (!res && u.is_app()) {
      res = case5_split(t, ts, u).has_value();
    }
  }
  if (!res && t.is_app() && u.is_app()) {
    const Term &t1 = t.fun(), &t2 = t.arg(), &u1 = u.fun(), &u2 = u.arg();
    if (stats_) {
      ++stats_->case6_checks;
      bool a = t1.type() == u1.type() && t1.type() == u2.type();
      bool b = t2.type() == u1.type() && t2.type() == u2.type();
      bool d = t2.type() == u1.type() && t1.type() == u2.type();
      if (a || b || d) {
        ++stats_->case6_trips;
      }
    }
    if (t1.type() == u1.type()) {
      bool e1 = alpha_eq(t1, u1), e2 = alpha_eq(t2, u2);
      res = !(e1 && e2) && (e1 || gt(t1, u1)) && (e2 || gt(t2, u2));
    }
  }
  if (!res && t.is_lam() && u.is_lam() && t.binder_type() == u.binder_type()) {
    std::string z = common_binder(t, u, {});
    res = gt(rename_binder_body(t, z), rename_binder_body(u, z));
  }
  memo_[key] = res;
  return res;
}

std::vector<Derivation> Horpo::p_witness(const Term& t, const std::vector<Term>& ts, const Term& v)
{
  if (gt(t, v)) {
    return {build(t, v)};
  }
  for (const auto& tj : ts) {
    if (alpha_eq(tj, v)) {
      return {};
    }
  }
  for (const auto& tj : ts) {
    if (gt(tj, v)) {
      return {build(tj, v)};
    }
  }
  throw std::logic_error("horpo: P does not hold");
}

Derivation Horpo::build(const Term& t, const Term& u)
{
  auto concl = Judgement::binary(JudgementKind::Horpo, t, u);
  if (t.head().is_sym()) {
    const std::string& f = t.head().name();
    auto ts = t.args();
    for (const auto& ti : ts) {
      if (alpha_eq(ti, u)) {
        return Derivation{"horpo1", concl, {}};
      }
    }
    for (const auto& ti : ts) {
      if (gt(ti, u)) {
        return Derivation{"horpo1", concl, {build(ti, u)}};
      }
    }
    if (u.head().is_sym()) {
      auto us = u.args();
      auto pc = safe_cmp(params_, f, u.head().name());
      TermRel rel = [this](const Term& a, const Term& b) { return gt(a, b); };
      auto all_p = [&] {
        return std::all_of(us.begin(), us.end(), [&](const Term& uj) { return p_holds(t, ts, uj); });
      };
      Status st = params_.status_of(f);
      if (pc == PrecResult::Greater && all_p()) {
        Derivation d{"horpo2", concl, {}};
        for (const auto& uj : us) {
          for (auto& w : p_witness(t, ts, uj)) {
            d.children.push_back(std::move(w));
          }
        }
        return d;
      }
      if (pc == PrecResult::Equivalent && status_ext(st, ts, us, rel) && (st == Status::Mul || all_p())) {
        Derivation d{st == Status::Mul ? "horpo3" : "horpo4", concl, {}};
        if (st != Status::Mul) {
          for (const auto& uj : us) {
            for (auto& w : p_witness(t, ts, uj)) {
              d.children.push_back(std::move(w));
            }
          }
        }
        for (auto [i, k] : status_witnesses(st, ts, us, rel)) {
          d.children.push_back(build(ts[i], us[k]));
        }
        return d;
      }
    }
    if (u.is_app()) {
      if (auto k = case5_split(t, ts, u)) {
        Derivation d{"horpo5", concl, {}};
        auto as = u.args();
        std::vector<Term> pieces{prefix_of(u.head(), as, *k)};
        pieces.insert(pieces.end(), as.begin() + static_cast<std::ptrdiff_t>(*k), as.end());
        for (const auto& v : pieces) {
          for (auto& w : p_witness(t, ts, v)) {
            d.children.push_back(std::move(w));
          }
        }
        return d;
      }
    }
  }
  if (t.is_app() && u.is_app() && t.fun().type() == u.fun().type()) {
    Derivation d{"horpo6", concl, {}};
    if (!alpha_eq(t.fun(), u.fun())) {
      d.children.push_back(build(t.fun(), u.fun()));
    }
    if (!alpha_eq(t.arg(), u.arg())) {
      d.children.push_back(build(t.arg(), u.arg()));
    }
    return d;
  }
  if (t.is_lam() && u.is_lam()) {
    std::string z = common_binder(t, u, {});
    Term bt = rename_binder_body(t, z), bu = rename_binder_body(u, z);
    Term lt = Term::lam(z, t.binder_type(), bt), lu = Term::lam(z, u.binder_type(), bu);
    return Derivation{"horpo7", Judgement::binary(JudgementKind::Horpo, lt, lu), {build(bt, bu)}};
  }
  throw std::logic_error("horpo: no derivation for a positive pair");
}

std::optional<Derivation> Horpo::derive(const Term& t, const Term& u)
{
  if (!gt(t, u)) {
    return std::nullopt;
  }
  return build(t, u);
}

std::optional<Derivation> horpo_gt(const OrderParams& params, const Term& t, const Term& u, HorpoStats* stats)
{
  Horpo h(params, stats);
  return h.derive(t, u);
}

// ---- closure search ----------------------------------------------------------

namespace {
constexpr std::size_t kForwardCap = 400;
constexpr std::size_t kCandidateCap = 40;
} // namespace

ClosureSearch::ClosureSearch(const OrderParams& params, const RuleSet& rview, Term root, Budget budget,
                             const std::vector<Derivation>* justify)
    : params_(params), rview_(rview), justify_(justify), budget_(budget), root_(std::move(root))
{
  if (!root_.head().is_sym()) {
    throw std::invalid_argument("closure root must be headed by a symbol: " + to_string(root_));
  }
  f_ = root_.head().name();
  ts_ = root_.args();
  forbidden_ = free_vars(root_);
  reserved_ = all_var_names(root_);
  size_cap_ = root_.size() + budget_.max_term_size_slack;
}

std::string ClosureSearch::hygienic(const std::string& x, const std::set<std::string>& extra)
{
  if (!forbidden_.count(x)) {
    return x;
  }
  std::set<std::string> avoid = reserved_;
  avoid.insert(extra.begin(), extra.end());
  return fresh_name(x, avoid);
}

void ClosureSearch::add_goal_context(const Term& goal)
{
  auto names = all_var_names(goal);
  reserved_.insert(names.begin(), names.end());
  size_cap_ = std::max(size_cap_, goal.size() + budget_.max_term_size_slack);
  auto add = [&](const Term& v) {
    for (const auto& p : pool_) {
      if (alpha_eq(p, v)) {
        return;
      }
    }
    pool_.push_back(v);
  };
  for (const auto& [x, ty] : free_var_types(goal)) {
    if (!forbidden_.count(x)) {
      add(Term::var(x, ty));
    }
  }
  std::vector<Term> work{goal};
  while (!work.empty()) {
    Term t = work.back();
    work.pop_back();
    if (t.is_lam()) {
      add(Term::var(hygienic(t.name()), t.binder_type()));
      work.push_back(t.body());
    } else if (t.is_app()) {
      work.push_back(t.fun());
      work.push_back(t.arg());
    }
  }
}

void ClosureSearch::add_forward(const Term& t, Derivation d)
{
  if (forward_.size() >= kForwardCap) {
    budget_hit_ = true;
    return;
  }
  if (forward_index_.emplace(alpha_key(t), forward_.size()).second) {
    forward_.emplace_back(t, std::move(d));
  }
}

Derivation ClosureSearch::steps_node(const std::vector<Term>& path)
{
  Derivation d{"red", Judgement::steps(path), {}};
  if (!justify_) {
    return d;
  }
  std::set<std::size_t> used;
  static const RuleSet no_rules;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    bool beta = false;
    for (const auto& r : one_step_reducts(no_rules, path[i], ReductionKind::Beta)) {
      if (alpha_eq(r, path[i + 1])) {
        beta = true;
        break;
      }
    }
    if (beta) {
      continue;
    }
    for (std::size_t k = 0; k < rview_.size(); ++k) {
      RuleSet one;
      one.add(rview_.rules()[k]);
      bool hit = false;
      for (const auto& r : one_step_reducts(one, path[i], ReductionKind::Rules)) {
        if (alpha_eq(r, path[i + 1])) {
          hit = true;
          break;
        }
      }
      if (hit) {
        if (used.insert(k).second && k < justify_->size()) {
          d.children.push_back((*justify_)[k]);
        }
        break;
      }
    }
  }
  return d;
}

std::optional<std::vector<Term>> ClosureSearch::path_to(const Term& from, const Term& to)
{
  auto key = std::make_pair(alpha_key(from), alpha_key(to));
  if (auto it = paths_.find(key); it != paths_.end()) {
    return it->second;
  }
  bool trunc = false;
  auto p = reduction_path(rview_, from, to, ReachBudget{budget_.max_red_steps, size_cap_}, &trunc);
  if (!p && trunc) {
    budget_hit_ = true;
  }
  paths_[key] = p;
  return p;
}

void ClosureSearch::ensure_forward()
{
  if (forward_built_) {
    return;
  }
  forward_built_ = true;
  for (const auto& ti : ts_) {
    add_forward(ti, Derivation{"arg", Judgement::member(JudgementKind::Member, root_, ti), {}});
  }
  for (std::size_t next = 0; next < forward_.size(); ++next) {
    Term w = forward_[next].first;
    if (w.head().is_sym()) {
      auto ws = w.args();
      for (std::size_t i : acc(w.head().type())) {
        if (i <= ws.size()) {
          add_forward(ws[i - 1], Derivation{"decomp", Judgement::member(JudgementKind::Member, root_, ws[i - 1]),
                                            {forward_[next].second}});
        }
      }
    }
    if (w.type().is_arrow()) {
      for (const auto& y : pool_) {
        if (y.type() == w.type().dom()) {
          Term wy = Term::app(w, y);
          Derivation var{"var", Judgement::member(JudgementKind::Member, root_, y), {}};
          add_forward(wy, Derivation{"app", Judgement::member(JudgementKind::Member, root_, wy),
                                     {forward_[next].second, var}});
        }
      }
    }
    ReachResult r = reach(rview_, w, ReachBudget{budget_.max_red_steps, size_cap_});
    if (r.truncated) {
      budget_hit_ = true;
    }
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      std::vector<Term> path;
      for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i); k >= 0; k = r.parent[k]) {
        path.push_back(r.terms[k]);
      }
      path.push_back(w);
      std::reverse(path.begin(), path.end());
      add_forward(r.terms[i], Derivation{"red", Judgement::member(JudgementKind::Member, root_, r.terms[i]),
                                         {forward_[next].second, steps_node(path)}});
    }
  }
}

std::optional<Derivation> ClosureSearch::member(const Term& u)
{
  return member_rec(u, 0);
}

std::optional<Derivation> ClosureSearch::approx(const Term& a, const Term& b)
{
  ensure_forward();
  return approx_rec(a, b, 0);
}

std::optional<Derivation> ClosureSearch::member_rec(const Term& u, std::size_t depth)
{
  ensure_forward();
  auto key = alpha_key(u);
  if (auto it = forward_index_.find(key); it != forward_index_.end()) {
    return forward_[it->second].second;
  }
  if (depth >= budget_.max_search_depth) {
    budget_hit_ = true;
    return std::nullopt;
  }
  const std::size_t remaining = budget_.max_search_depth - depth;
  if (auto it = memo_.find(key); it != memo_.end() && (it->second.d || it->second.remaining >= remaining)) {
    return it->second.d;
  }
  if (in_progress_.count(key)) {
    return std::nullopt;
  }
  in_progress_.insert(key);
  auto r = member_uncached(u, depth);
  in_progress_.erase(key);
  memo_[key] = Cached{r, remaining};
  return r;
}

std::optional<Derivation> ClosureSearch::member_uncached(const Term& u, std::size_t depth)
{
  auto concl = Judgement::member(JudgementKind::Member, root_, u);
  switch (u.kind()) {
  case TermKind::Var:
    if (!forbidden_.count(u.name())) {
      return Derivation{"var", concl, {}};
    }
    return std::nullopt;
  case TermKind::Sym:
    if (safe_cmp(params_, f_, u.name()) == PrecResult::Greater) {
      return Derivation{"prec", concl, {}};
    }
    return std::nullopt;
  case TermKind::Lam: {
    std::string x = hygienic(u.name(), all_var_names(u));
    Term body = rename_binder_body(u, x);
    auto sub = member_rec(body, depth + 1);
    if (!sub) {
      return std::nullopt;
    }
    Term lu = Term::lam(x, u.binder_type(), body);
    return Derivation{"lam", Judgement::member(JudgementKind::Member, root_, lu), {std::move(*sub)}};
  }
  case TermKind::App:
    break;
  }
  if (u.head().is_sym()) {
    if (auto d = try_call(u, depth)) {
      return d;
    }
  }
  auto a = member_rec(u.fun(), depth + 1);
  if (!a) {
    return std::nullopt;
  }
  auto b = member_rec(u.arg(), depth + 1);
  if (!b) {
    return std::nullopt;
  }
  return Derivation{"app", concl, {std::move(*a), std::move(*b)}};
}

std::optional<Derivation> ClosureSearch::try_call(const Term& u, std::size_t depth)
{
  const Term& g = u.head();
  if (safe_cmp(params_, f_, g.name()) != PrecResult::Equivalent) {
    return std::nullopt;
  }
  auto us = u.args();
  const bool full = us.size() == g.type().arity() && ts_.size() == root_.head().type().arity();
  if (us.empty() || (us.size() != ts_.size() && !full)) {
    return std::nullopt;
  }
  Derivation d{"call", Judgement::member(JudgementKind::Member, root_, u), {}};
  for (const auto& uj : us) {
    auto m = member_rec(uj, depth + 1);
    for (std::size_t i = 0; !m && i < ts_.size(); ++i) {
      m = approx_rec(ts_[i], uj, depth + 1);
    }
    if (!m) {
      return std::nullopt;
    }
    d.children.push_back(std::move(*m));
  }
  std::map<std::string, std::optional<Derivation>> facts;
  TermRel rel = [&](const Term& a, const Term& b) {
    auto key = pair_key(a, b);
    if (auto it = facts.find(key); it != facts.end()) {
      return it->second.has_value();
    }
    std::optional<Derivation> fact;
    if (auto p = path_to(a, b)) {
      fact = steps_node(*p);
    } else {
      fact = approx_rec(a, b, depth + 1);
    }
    facts[key] = fact;
    return fact.has_value();
  };
  Status st = params_.status_of(f_);
  if (!status_ext(st, ts_, us, rel)) {
    return std::nullopt;
  }
  for (auto [i, k] : status_witnesses(st, ts_, us, rel)) {
    d.children.push_back(*facts.at(pair_key(ts_[i], us[k])));
  }
  return d;
}

std::optional<Derivation> ClosureSearch::approx_rec(const Term& a, const Term& b, std::size_t depth)
{
  if (depth >= budget_.max_search_depth) {
    budget_hit_ = true;
    return std::nullopt;
  }
  auto key = "A" + pair_key(a, b);
  const std::size_t remaining = budget_.max_search_depth - depth;
  if (auto it = memo_.find(key); it != memo_.end() && (it->second.d || it->second.remaining >= remaining)) {
    return it->second.d;
  }
  if (in_progress_.count(key)) {
    return std::nullopt;
  }
  in_progress_.insert(key);
  auto r = approx_uncached(a, b, depth);
  in_progress_.erase(key);
  memo_[key] = Cached{r, remaining};
  return r;
}

std::optional<Derivation> ClosureSearch::try_base(const Term& a, const Term& b, std::size_t depth)
{
  if (!a.head().is_sym() || !a.type().is_base() || b.type() != a.type()) {
    return std::nullopt;
  }
  auto as = a.args();
  auto accessible = acc(a.head().type());
  const Term& h = b.head();
  auto cs = b.args();
  for (std::size_t k = 0; k <= cs.size(); ++k) {
    Term prefix = prefix_of(h, cs, k);
    for (std::size_t i : accessible) {
      if (i > as.size() || !alpha_eq(prefix, as[i - 1])) {
        continue;
      }
      Derivation d{"base⊐", Judgement::approx(root_, a, b), {}};
      bool ok = true;
      for (std::size_t j = k; j < cs.size() && ok; ++j) {
        auto m = member_rec(cs[j], depth + 1);
        ok = m.has_value();
        if (ok) {
          d.children.push_back(std::move(*m));
        }
      }
      if (ok) {
        return d;
      }
    }
  }
  return std::nullopt;
}

std::vector<Term> ClosureSearch::red_candidates(const Term& a)
{
  std::vector<Term> out;
  if (!a.head().is_sym() || !a.type().is_base()) {
    return out;
  }
  auto as = a.args();
  std::vector<Term> work;
  for (std::size_t i : acc(a.head().type())) {
    if (i <= as.size()) {
      work.push_back(as[i - 1]);
    }
  }
  while (!work.empty() && out.size() < kCandidateCap) {
    Term c = work.back();
    work.pop_back();
    if (c.type() == a.type()) {
      out.push_back(c);
      continue;
    }
    if (!c.type().is_arrow()) {
      continue;
    }
    for (const auto& y : pool_) {
      if (y.type() == c.type().dom()) {
        work.push_back(Term::app(c, y));
      }
    }
  }
  return out;
}

std::optional<Derivation> ClosureSearch::approx_uncached(const Term& a, const Term& b, std::size_t depth)
{
  if (auto d = try_base(a, b, depth)) {
    return d;
  }
  if (a.is_lam() && b.type().is_arrow() && b.type().dom() == a.binder_type()) {
    std::string x = a.name();
    auto fvb = free_vars(b);
    if (fvb.count(x) || forbidden_.count(x)) {
      std::set<std::string> avoid = reserved_;
      avoid.insert(fvb.begin(), fvb.end());
      auto an = all_var_names(a);
      avoid.insert(an.begin(), an.end());
      x = fresh_name(x, avoid);
    }
    Term body = rename_binder_body(a, x);
    Term bx = Term::app(b, Term::var(x, a.binder_type()));
    if (auto sub = approx_rec(body, bx, depth + 1)) {
      Term la = Term::lam(x, a.binder_type(), body);
      return Derivation{"lam⊐", Judgement::approx(root_, la, b), {std::move(*sub)}};
    }
  }
  auto cands = red_candidates(a);
  for (const auto& c : cands) {
    if (alpha_eq(c, b)) {
      continue;
    }
    if (auto p = path_to(c, b)) {
      if (auto base = try_base(a, c, depth + 1)) {
        return Derivation{"red⊐", Judgement::approx(root_, a, b), {std::move(*base), steps_node(*p)}};
      }
    }
  }
  for (const auto& c : cands) {
    if (alpha_eq(c, b)) {
      continue;
    }
    auto base = try_base(a, c, depth + 1);
    if (!base) {
      continue;
    }
    if (auto rest = approx_rec(c, b, depth + 1)) {
      return Derivation{"trans⊐", Judgement::approx(root_, a, b), {std::move(*base), std::move(*rest)}};
    }
  }
  return std::nullopt;
}

// ---- entry points ------------------------------------------------------------

std::optional<Derivation> cc_ho_member(const Trs& trs, const RuleSet& rview, const std::string& f,
                                       const std::vector<Term>& ts, const Term& u, Budget budget)
{
  ClosureSearch cs(trs.params, rview, Term::apply(trs.sig.symbol(f), ts), budget);
  cs.add_goal_context(u);
  return cs.member(u);
}

std::optional<Derivation> size_approx_gt(const Trs& trs, const RuleSet& rview, const std::string& f,
                                         const std::vector<Term>& ts, const Term& a, const Term& b, Budget budget)
{
  ClosureSearch cs(trs.params, rview, Term::apply(trs.sig.symbol(f), ts), budget);
  cs.add_goal_context(a);
  cs.add_goal_context(b);
  return cs.approx(a, b);
}

OrientResult orient_rule_ex(const Trs& trs, const Rule& rule, Budget budget)
{
  OrientResult out;
  if (auto why = rule_violation(rule.lhs, rule.rhs)) {
    out.reason = *why;
    return out;
  }
  RuleSet rs = trs.rule_set();
  ClosureSearch cs(trs.params, rs, rule.lhs, budget);
  cs.add_goal_context(rule.rhs);
  out.derivation = cs.member(rule.rhs);
  out.budget_hit = cs.budget_hit();
  if (!out.derivation) {
    out.reason = out.budget_hit ? "not oriented within budget" : "right-hand side not in the computability closure";
  }
  return out;
}

std::optional<Derivation> orient_rule(const Trs& trs, const Rule& rule, Budget budget)
{
  return orient_rule_ex(trs, rule, budget).derivation;
}

namespace {

void push_unique(std::vector<Term>& out, std::set<std::string>& seen, const Term& t)
{
  if (seen.insert(alpha_key(t)).second) {
    out.push_back(t);
  }
}

bool fv_subset(const Term& small, const Term& big)
{
  auto fb = free_vars(big);
  for (const auto& x : free_vars(small)) {
    if (!fb.count(x)) {
      return false;
    }
  }
  return true;
}

} // namespace

std::optional<Derivation> HorcoEngine::whorco_gt(const Term& t, const Term& u)
{
  auto key = pair_key(t, u);
  if (auto it = whorco_cache_.find(key); it != whorco_cache_.end()) {
    budget_hit_ = budget_hit_ || whorco_hit_[key];
    return it->second;
  }
  bool saved = budget_hit_;
  budget_hit_ = false;
  auto r = whorco_uncached(t, u);
  whorco_cache_[key] = r;
  whorco_hit_[key] = budget_hit_;
  budget_hit_ = budget_hit_ || saved;
  return r;
}

std::optional<Derivation> HorcoEngine::whorco_uncached(const Term& t, const Term& u)
{
  if (!t.head().is_sym() || t.type() != u.type() || !fv_subset(u, t) || alpha_eq(t, u)) {
    return std::nullopt;
  }
  std::vector<Term> universe, lefts;
  std::set<std::string> seen_u, seen_l;
  for (const auto& s : binary_subterms(t)) {
    push_unique(universe, seen_u, s);
    if (s.head().is_sym()) {
      push_unique(lefts, seen_l, s);
    }
  }
  for (const auto& s : binary_subterms(u)) {
    push_unique(universe, seen_u, s);
  }
  RuleSet rview;
  std::vector<Derivation> justs;
  std::set<std::string> have;
  for (std::size_t round = 0; round < budget_.max_search_depth; ++round) {
    {
      ClosureSearch cs(params_, rview, t, budget_, &justs);
      cs.add_goal_context(u);
      auto d = cs.member(u);
      budget_hit_ = budget_hit_ || cs.budget_hit();
      if (d) {
        return d;
      }
    }
    std::vector<std::pair<Rule, Derivation>> found;
    for (const auto& l : lefts) {
      ClosureSearch cs(params_, rview, l, budget_, &justs);
      for (const auto& r : universe) {
        cs.add_goal_context(r);
      }
      for (const auto& r : universe) {
        if (r.type() != l.type() || !fv_subset(r, l) || alpha_eq(l, r) || have.count(pair_key(l, r))) {
          continue;
        }
        if (auto d = cs.member(r)) {
          found.emplace_back(Rule{l, r}, std::move(*d));
        }
      }
      budget_hit_ = budget_hit_ || cs.budget_hit();
    }
    if (found.empty()) {
      return std::nullopt;
    }
    for (auto& [rule, d] : found) {
      have.insert(pair_key(rule.lhs, rule.rhs));
      rview.add(rule);
      justs.push_back(std::move(d));
    }
  }
  budget_hit_ = true;
  return std::nullopt;
}

std::optional<Derivation> HorcoEngine::horco_rec(const Term& t, const Term& u, const std::set<std::string>& avoid)
{
  if (alpha_eq(t, u) || t.type() != u.type()) {
    return std::nullopt;
  }
  if (t.head().is_sym()) {
    if (auto d = whorco_gt(t, u)) {
      return Derivation{"context", Judgement::binary(JudgementKind::Horco, t, u), {std::move(*d)}};
    }
  }
  if (t.is_app() && u.is_app()) {
    if (alpha_eq(t.fun(), u.fun())) {
      if (auto sub = horco_rec(t.arg(), u.arg(), avoid)) {
        sub->conclusion.left = Term::app(t.fun(), sub->conclusion.left);
        sub->conclusion.right = Term::app(t.fun(), sub->conclusion.right);
        return sub;
      }
    } else if (alpha_eq(t.arg(), u.arg()) && t.fun().type() == u.fun().type()) {
      if (auto sub = horco_rec(t.fun(), u.fun(), avoid)) {
        sub->conclusion.left = Term::app(sub->conclusion.left, t.arg());
        sub->conclusion.right = Term::app(sub->conclusion.right, t.arg());
        return sub;
      }
    }
  }
  if (t.is_lam() && u.is_lam() && t.binder_type() == u.binder_type()) {
    std::string z = common_binder(t, u, avoid);
    std::set<std::string> inner = avoid;
    inner.insert(z);
    if (auto sub = horco_rec(rename_binder_body(t, z), rename_binder_body(u, z), inner)) {
      sub->conclusion.left = Term::lam(z, t.binder_type(), sub->conclusion.left);
      sub->conclusion.right = Term::lam(z, u.binder_type(), sub->conclusion.right);
      return sub;
    }
  }
  return std::nullopt;
}

std::optional<Derivation> HorcoEngine::horco_gt(const Term& t, const Term& u)
{
  std::set<std::string> avoid = free_vars(t);
  for (const auto& x : free_vars(u)) {
    avoid.insert(x);
  }
  return horco_rec(t, u, avoid);
}

std::optional<std::vector<Derivation>> HorcoEngine::horco_chain(const Term& t, const Term& u, std::size_t max_chain)
{
  struct Node {
    Term term;
    std::ptrdiff_t parent;
    std::optional<Derivation> step;
  };
  std::vector<Node> nodes{{t, -1, std::nullopt}};
  std::set<std::string> seen{alpha_key(t)};
  std::vector<std::size_t> level{0};
  for (std::size_t len = 1; len <= max_chain && !level.empty(); ++len) {
    std::vector<std::size_t> next;
    for (std::size_t idx : level) {
      Term w = nodes[idx].term;
      std::vector<Term> cands = merges(w, u);
      // Try the target first.
      std::stable_partition(cands.begin(), cands.end(), [&](const Term& c) { return alpha_eq(c, u); });
      for (const auto& c : cands) {
        bool is_target = alpha_eq(c, u);
        if (!is_target && (len == max_chain || seen.count(alpha_key(c)))) {
          continue;
        }
        auto d = horco_gt(w, c);
        if (!d) {
          continue;
        }
        nodes.push_back(Node{c, static_cast<std::ptrdiff_t>(idx), std::move(d)});
        if (is_target) {
          std::vector<Derivation> chain;
          for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(nodes.size()) - 1; nodes[k].parent >= 0;
               k = nodes[k].parent) {
            chain.push_back(*nodes[k].step);
          }
          std::reverse(chain.begin(), chain.end());
          return chain;
        }
        seen.insert(alpha_key(c));
        next.push_back(nodes.size() - 1);
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

std::optional<Derivation> whorco_gt(const OrderParams& params, const Term& t, const Term& u, Budget budget)
{
  HorcoEngine e(params, budget);
  return e.whorco_gt(t, u);
}

std::optional<Derivation> horco_gt(const OrderParams& params, const Term& t, const Term& u, Budget budget)
{
  HorcoEngine e(params, budget);
  return e.horco_gt(t, u);
}

bool horco_chain_gt(const OrderParams& params, const Term& t, const Term& u, std::size_t max_chain, Budget budget)
{
  HorcoEngine e(params, budget);
  return e.horco_chain(t, u, max_chain).has_value();
}

namespace {

std::vector<Term> merges_rec(const Term& a, const Term& b)
{
  std::vector<Term> out;
  std::set<std::string> seen;
  push_unique(out, seen, a);
  if (a.type() == b.type()) {
    push_unique(out, seen, b);
  }
  if (a.is_app() && b.is_app() && a.fun().type() == b.fun().type()) {
    auto fs = merges_rec(a.fun(), b.fun());
    auto xs = merges_rec(a.arg(), b.arg());
    for (const auto& f : fs) {
      for (const auto& x : xs) {
        push_unique(out, seen, Term::app(f, x));
      }
    }
  }
  if (a.is_lam() && b.is_lam() && a.binder_type() == b.binder_type()) {
    std::string z = common_binder(a, b, {});
    for (const auto& body : merges_rec(rename_binder_body(a, z), rename_binder_body(b, z))) {
      push_unique(out, seen, Term::lam(z, a.binder_type(), body));
    }
  }
  return out;
}

} // namespace

std::vector<Term> merges(const Term& t, const Term& u)
{
  std::vector<Term> out;
  for (auto& m : merges_rec(t, u)) {
    if (!alpha_eq(m, t)) {
      out.push_back(std::move(m));
    }
  }
  return out;
}

} // namespace horco
