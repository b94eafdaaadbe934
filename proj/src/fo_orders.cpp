#include "horco/fo_orders.hpp"

#include <algorithm>
#include <stdexcept>

namespace horco {

bool is_fo_shape(const Term& t)
{
  if (t.is_lam() || !t.type().is_base()) {
    return false;
  }
  const Term& h = t.head();
  if (h.is_lam()) {
    return false;
  }
  auto as = t.args();
  if (h.is_var() && !as.empty()) {
    return false;
  }
  return std::all_of(as.begin(), as.end(), [](const Term& a) { return is_fo_shape(a); });
}

namespace {

std::string pair_key(const Term& t, const Term& u)
{
  return alpha_key(t) + "\x1f" + alpha_key(u);
}

void require_fo(const Term& t, const Term& u)
{
  if (!is_fo_shape(t) || !is_fo_shape(u)) {
    throw std::invalid_argument("first-order terms expected: " + to_string(t) + ", " + to_string(u));
  }
}

bool strict_subterm(const Term& big, const Term& small)
{
  for (const auto& a : big.args()) {
    if (alpha_eq(a, small) || strict_subterm(a, small)) {
      return true;
    }
  }
  return false;
}

} // namespace

// ---- RPO -------------------------------------------------------------------

bool Rpo::gt(const Term& t, const Term& u)
{
  require_fo(t, u);
  return gt_rec(t, u);
}

bool Rpo::gt_rec(const Term& t, const Term& u)
{
  if (t.is_var()) {
    return false;
  }
  auto key = pair_key(t, u);
  if (auto it = memo_.find(key); it != memo_.end()) {
    return it->second;
  }
  bool res = false;
  auto ts = t.args();
  for (const auto& ti : ts) {
    if (alpha_eq(ti, u) || gt_rec(ti, u)) {
      res = true;
      break;
    }
  }
  if (!res && u.head().is_sym()) {
    auto us = u.args();
    const std::string& f = t.head().name();
    const std::string& g = u.head().name();
    auto pc = params_.prec.cmp(f, g);
    auto all_below = [&] {
      return std::all_of(us.begin(), us.end(), [&](const Term& uj) { return gt_rec(t, uj); });
    };
    if (pc == PrecResult::Greater) {
      res = all_below();
    } else if (pc == PrecResult::Equivalent) {
      TermRel rel = [this](const Term& a, const Term& b) { return gt_rec(a, b); };
      res = status_ext(params_.status_of(f), ts, us, rel) && all_below();
    }
  }
  memo_[key] = res;
  return res;
}

Derivation Rpo::build(const Term& t, const Term& u)
{
  auto concl = Judgement::binary(JudgementKind::Rpo, t, u);
  auto ts = t.args();
  for (const auto& ti : ts) {
    if (alpha_eq(ti, u)) {
      return Derivation{"rpo1", concl, {}};
    }
  }
  for (const auto& ti : ts) {
    if (gt_rec(ti, u)) {
      return Derivation{"rpo1", concl, {build(ti, u)}};
    }
  }
  auto us = u.args();
  const std::string& f = t.head().name();
  Derivation d{params_.prec.greater(f, u.head().name()) ? "rpo2" : "rpo3", concl, {}};
  for (const auto& uj : us) {
    d.children.push_back(build(t, uj));
  }
  if (d.rule == "rpo3") {
    TermRel rel = [this](const Term& a, const Term& b) { return gt_rec(a, b); };
    for (auto [i, k] : status_witnesses(params_.status_of(f), ts, us, rel)) {
      d.children.push_back(build(ts[i], us[k]));
    }
  }
  return d;
}

std::optional<Derivation> Rpo::derive(const Term& t, const Term& u)
{
  if (!gt(t, u)) {
    return std::nullopt;
  }
  return build(t, u);
}

std::optional<Derivation> rpo_gt(const OrderParams& params, const Term& t, const Term& u)
{
  Rpo r(params);
  return r.derive(t, u);
}

// ---- RCO -------------------------------------------------------------------

bool Rco::gt(const Term& t, const Term& u)
{
  require_fo(t, u);
  if (!t.head().is_sym()) {
    throw std::invalid_argument("left side must be headed by a symbol: " + to_string(t));
  }
  return gt_rec(t, u);
}

namespace {

/// Symbol-headed strict subterms of t down to `max_depth` levels.
void strict_fun_subterms(const Term& t, std::size_t max_depth, std::vector<Term>& out, std::size_t depth = 0)
{
  if (depth >= max_depth) {
    return;
  }
  for (const auto& a : t.args()) {
    if (a.head().is_sym()) {
      out.push_back(a);
      strict_fun_subterms(a, max_depth, out, depth + 1);
    }
  }
}

} // namespace

bool Rco::gt_rec(const Term& t, const Term& u)
{
  auto key = pair_key(t, u);
  if (auto it = memo_.find(key); it != memo_.end()) {
    return it->second;
  }
  memo_[key] = false;
  auto ts = t.args();
  bool res = std::any_of(ts.begin(), ts.end(), [&](const Term& ti) { return alpha_eq(ti, u); });
  if (!res && u.head().is_sym()) {
    const std::string& f = t.head().name();
    const std::string& g = u.head().name();
    auto pc = params_.prec.cmp(f, g);
    if (pc != PrecResult::NotGreaterOrEquiv) {
      auto us = u.args();
      bool args_ok = std::all_of(us.begin(), us.end(), [&](const Term& uj) { return gt_rec(t, uj); });
      if (args_ok && pc == PrecResult::Greater) {
        res = true;
      } else if (args_ok) {
        TermRel rel = [this](const Term& a, const Term& b) { return a.head().is_sym() && gt_rec(a, b); };
        res = status_ext(params_.status_of(f), ts, us, rel);
      }
    }
  }
  if (!res) {
    std::vector<Term> ws;
    strict_fun_subterms(t, budget_.max_search_depth, ws);
    for (const auto& w : ws) {
      if (gt_rec(w, u)) {
        res = true;
        break;
      }
    }
  }
  memo_[key] = res;
  return res;
}

Derivation Rco::to_subterm(const Term& t, const Term& w)
{
  auto concl = Judgement::binary(JudgementKind::Rco, t, w);
  auto ts = t.args();
  for (const auto& ti : ts) {
    if (alpha_eq(ti, w)) {
      return Derivation{"arg", concl, {}};
    }
  }
  for (const auto& ti : ts) {
    if (strict_subterm(ti, w)) {
      Derivation step{"arg", Judgement::binary(JudgementKind::Rco, t, ti), {}};
      return Derivation{"red", concl, {step, to_subterm(ti, w)}};
    }
  }
  throw std::logic_error("not a strict subterm");
}

Derivation Rco::build(const Term& t, const Term& u)
{
  auto concl = Judgement::binary(JudgementKind::Rco, t, u);
  auto ts = t.args();
  for (const auto& ti : ts) {
    if (alpha_eq(ti, u)) {
      return Derivation{"arg", concl, {}};
    }
  }
  if (u.head().is_sym()) {
    const std::string& f = t.head().name();
    auto pc = params_.prec.cmp(f, u.head().name());
    auto us = u.args();
    bool args_ok = pc != PrecResult::NotGreaterOrEquiv &&
                   std::all_of(us.begin(), us.end(), [&](const Term& uj) { return gt_rec(t, uj); });
    TermRel rel = [this](const Term& a, const Term& b) { return a.head().is_sym() && gt_rec(a, b); };
    if (args_ok && (pc == PrecResult::Greater || status_ext(params_.status_of(f), ts, us, rel))) {
      Derivation d{pc == PrecResult::Greater ? "prec" : "call", concl, {}};
      for (const auto& uj : us) {
        d.children.push_back(build(t, uj));
      }
      if (pc == PrecResult::Equivalent) {
        for (auto [i, k] : status_witnesses(params_.status_of(f), ts, us, rel)) {
          d.children.push_back(build(ts[i], us[k]));
        }
      }
      return d;
    }
  }
  std::vector<Term> ws;
  strict_fun_subterms(t, budget_.max_search_depth, ws);
  for (const auto& w : ws) {
    if (gt_rec(w, u)) {
      return Derivation{"red", concl, {to_subterm(t, w), build(w, u)}};
    }
  }
  throw std::logic_error("rco: no derivation for a positive pair");
}

std::optional<Derivation> Rco::derive(const Term& t, const Term& u)
{
  if (!gt(t, u)) {
    return std::nullopt;
  }
  return build(t, u);
}

std::optional<Derivation> rco_gt(const OrderParams& params, const Term& t, const Term& u, Budget budget)
{
  Rco r(params, budget);
  return r.derive(t, u);
}

// ---- first-order computability closure ---------------------------------------

namespace {

class FoClosure {
public:
  FoClosure(const Trs& trs, const std::string& f, std::vector<Term> ts, Budget budget)
      : rules_(trs.rules), params_(trs.params), f_(f), ts_(std::move(ts)), budget_(budget)
  {
    root_ = Term::apply(trs.sig.symbol(f), ts_);
    std::size_t max_size = 0;
    for (const auto& t : ts_) {
      max_size = std::max(max_size, t.size());
    }
    reach_budget_ = ReachBudget{budget.max_red_steps, max_size + budget.max_term_size_slack};
    build_forward();
  }

  std::optional<Derivation> member(const Term& u, std::size_t depth)
  {
    auto key = alpha_key(u);
    if (auto it = forward_index_.find(key); it != forward_index_.end()) {
      return forward_[it->second].second;
    }
    if (depth >= budget_.max_search_depth || !u.head().is_sym()) {
      return std::nullopt;
    }
    auto pc = params_.prec.cmp(f_, u.head().name());
    if (pc == PrecResult::NotGreaterOrEquiv) {
      return std::nullopt;
    }
    auto concl = Judgement::member(JudgementKind::FoMember, root_, u);
    Derivation d{pc == PrecResult::Greater ? "prec" : "call", concl, {}};
    auto us = u.args();
    for (const auto& uj : us) {
      auto sub = member(uj, depth + 1);
      if (!sub) {
        return std::nullopt;
      }
      d.children.push_back(std::move(*sub));
    }
    if (pc == PrecResult::Equivalent) {
      std::map<std::string, std::vector<Term>> paths;
      TermRel rel = [&](const Term& a, const Term& b) {
        if (strict_subterm(a, b)) {
          return true;
        }
        if (auto p = reduction_path(rules_, a, b, reach_budget_)) {
          paths[pair_key(a, b)] = *p;
          return true;
        }
        return false;
      };
      Status st = params_.status_of(f_);
      if (!status_ext(st, ts_, us, rel)) {
        return std::nullopt;
      }
      for (auto [i, k] : status_witnesses(st, ts_, us, rel)) {
        if (auto it = paths.find(pair_key(ts_[i], us[k])); it != paths.end() && !strict_subterm(ts_[i], us[k])) {
          d.children.push_back(Derivation{"red", Judgement::steps(it->second), {}});
        }
      }
    }
    return d;
  }

  const Term& root() const { return root_; }

private:
  void add_forward(const Term& t, Derivation d)
  {
    if (forward_.size() >= kForwardCap) {
      return;
    }
    if (forward_index_.emplace(alpha_key(t), forward_.size()).second) {
      forward_.emplace_back(t, std::move(d));
    }
  }

  void build_forward()
  {
    for (const auto& ti : ts_) {
      add_forward(ti, Derivation{"arg", Judgement::member(JudgementKind::FoMember, root_, ti), {}});
    }
    for (std::size_t next = 0; next < forward_.size(); ++next) {
      Term w = forward_[next].first;
      if (w.head().is_sym()) {
        for (const auto& wi : w.args()) {
          add_forward(wi, Derivation{"decomp", Judgement::member(JudgementKind::FoMember, root_, wi),
                                     {forward_[next].second}});
        }
      }
      ReachResult r = reach(rules_, w, reach_budget_, ReductionKind::Rules);
      for (std::size_t i = 0; i < r.terms.size(); ++i) {
        std::vector<Term> path;
        for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i); k >= 0; k = r.parent[k]) {
          path.push_back(r.terms[k]);
        }
        path.push_back(w);
        std::reverse(path.begin(), path.end());
        add_forward(r.terms[i], Derivation{"red", Judgement::member(JudgementKind::FoMember, root_, r.terms[i]),
                                           {forward_[next].second, Derivation{"red", Judgement::steps(path), {}}}});
      }
    }
  }

  static constexpr std::size_t kForwardCap = 2000;
  RuleSet rules_;
  const OrderParams& params_;
  std::string f_;
  std::vector<Term> ts_;
  Budget budget_;
  ReachBudget reach_budget_;
  Term root_;
  std::vector<std::pair<Term, Derivation>> forward_;
  std::unordered_map<std::string, std::size_t> forward_index_;
};

} // namespace

std::optional<Derivation> cc_fo_member(const Trs& trs, const std::string& f, const std::vector<Term>& ts,
                                       const Term& u, Budget budget)
{
  if (trs.sig.arity(f) != ts.size()) {
    throw std::invalid_argument("symbol " + f + " expects " + std::to_string(trs.sig.arity(f)) + " arguments");
  }
  FoClosure c(trs, f, ts, budget);
  return c.member(u, 0);
}

// ---- fixpoint oracle ---------------------------------------------------------

std::optional<std::size_t> FixpointRelation::index_of(const Term& t) const
{
  for (std::size_t i = 0; i < universe.size(); ++i) {
    if (alpha_eq(universe[i], t)) {
      return i;
    }
  }
  return std::nullopt;
}

bool FixpointRelation::holds(const Term& t, const Term& u) const
{
  auto i = index_of(t);
  auto j = index_of(u);
  return i && j && gt[*i][*j];
}

std::size_t FixpointRelation::pair_count() const
{
  std::size_t n = 0;
  for (const auto& row : gt) {
    n += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
  }
  return n;
}

namespace {

using Matrix = std::vector<std::vector<bool>>;

struct Universe {
  std::vector<Term> terms;
  std::vector<std::vector<std::size_t>> args;
  std::vector<std::vector<std::size_t>> parents; // terms having this one as a direct argument
  Matrix subterm;                                 // subterm[a][b]: b strict subterm of a

  void build(const std::vector<Term>& input)
  {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Term> work(input.begin(), input.end());
    std::vector<Term> all;
    while (!work.empty()) {
      Term t = work.back();
      work.pop_back();
      if (index.emplace(alpha_key(t), 0).second) {
        all.push_back(t);
        for (const auto& a : t.args()) {
          work.push_back(a);
        }
      }
    }
    std::stable_sort(all.begin(), all.end(), [](const Term& a, const Term& b) {
      if (a.size() != b.size()) {
        return a.size() < b.size();
      }
      return alpha_key(a) < alpha_key(b);
    });
    terms = all;
    index.clear();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      index[alpha_key(terms[i])] = i;
    }
    const std::size_t n = terms.size();
    args.assign(n, {});
    parents.assign(n, {});
    subterm.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& a : terms[i].args()) {
        std::size_t j = index.at(alpha_key(a));
        args[i].push_back(j);
        parents[j].push_back(i);
        subterm[i][j] = true;
        for (std::size_t k = 0; k < n; ++k) {
          if (subterm[j][k]) {
            subterm[i][k] = true;
          }
        }
      }
    }
  }
};

Matrix context_closure(const Universe& U, const Matrix& R)
{
  const std::size_t n = U.terms.size();
  Matrix ctx = R;
  for (std::size_t a = 0; a < n; ++a) {
    const Term& ta = U.terms[a];
    if (!ta.head().is_sym()) {
      continue;
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (ctx[a][b]) {
        continue;
      }
      const Term& tb = U.terms[b];
      if (!tb.head().is_sym() || tb.head().name() != ta.head().name() || U.args[a].size() != U.args[b].size()) {
        continue;
      }
      std::size_t diff = 0, at = 0;
      for (std::size_t i = 0; i < U.args[a].size(); ++i) {
        if (U.args[a][i] != U.args[b][i]) {
          ++diff;
          at = i;
        }
      }
      if (diff == 1 && ctx[U.args[a][at]][U.args[b][at]]) {
        ctx[a][b] = true;
      }
    }
  }
  return ctx;
}

Matrix transitive_closure(Matrix m)
{
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i][k]) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (m[k][j]) {
          m[i][j] = true;
        }
      }
    }
  }
  return m;
}

bool ext_indices(Status s, const std::vector<std::size_t>& ts, const std::vector<std::size_t>& us, const Matrix& rel)
{
  auto r = [&](std::size_t a, std::size_t b) { return static_cast<bool>(rel[a][b]); };
  auto eq = [](std::size_t a, std::size_t b) { return a == b; };
  std::span<const std::size_t> a(ts), b(us);
  switch (s) {
  case Status::LexLR:
    return lex_ext(a, b, true, r, eq);
  case Status::LexRL:
    return lex_ext(a, b, false, r, eq);
  case Status::Mul:
    return mul_ext(a, b, r, eq);
  }
  return false;
}

} // namespace

FixpointRelation rco_fixpoint_oracle(const OrderParams& params, const std::vector<Term>& universe,
                                     FixpointVariant variant, bool enable_decomp)
{
  Universe U;
  U.build(universe);
  const std::size_t n = U.terms.size();
  FixpointRelation out;
  out.universe = U.terms;
  Matrix R(n, std::vector<bool>(n, false));
  while (true) {
    ++out.iterations;
    Matrix red_rel, call_rel;
    if (variant == FixpointVariant::Transitive) {
      red_rel = transitive_closure(context_closure(U, R));
      call_rel = red_rel;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (U.subterm[a][b]) {
            call_rel[a][b] = true;
          }
        }
      }
    } else {
      red_rel = R;
      call_rel = R;
    }
    Matrix next(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
      const Term& ts = U.terms[s];
      if (!ts.head().is_sym()) {
        continue;
      }
      const std::string& f = ts.head().name();
      std::vector<bool>& C = next[s];
      for (std::size_t a : U.args[s]) {
        C[a] = true;
      }
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t u = 0; u < n; ++u) {
          if (C[u]) {
            continue;
          }
          bool in = false;
          if (enable_decomp) {
            for (std::size_t w : U.parents[u]) {
              if (C[w] && U.terms[w].head().is_sym()) {
                in = true;
                break;
              }
            }
          }
          for (std::size_t w = 0; w < n && !in; ++w) {
            in = C[w] && red_rel[w][u];
          }
          const Term& tu = U.terms[u];
          if (!in && tu.head().is_sym()) {
            const auto& ua = U.args[u];
            bool args_in = std::all_of(ua.begin(), ua.end(), [&](std::size_t j) { return static_cast<bool>(C[j]); });
            if (args_in) {
              auto pc = params.prec.cmp(f, tu.head().name());
              in = pc == PrecResult::Greater ||
                   (pc == PrecResult::Equivalent && ext_indices(params.status_of(f), U.args[s], ua, call_rel));
            }
          }
          if (in) {
            C[u] = true;
            changed = true;
          }
        }
      }
    }
    if (next == R) {
      break;
    }
    R = std::move(next);
  }
  out.gt = R;
  return out;
}

} // namespace horco
