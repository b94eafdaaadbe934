#include "horco/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace horco {

struct Term::Node {
  TermKind kind;
  std::string name;
  Type type;
  Type binder_type;
  Term a; // fun or body
  Term b; // arg
  std::size_t size;
};

Term Term::var(std::string name, Type type)
{
  if (name.empty() || !type.valid()) {
    throw TypeError("variable needs a name and a type");
  }
  return Term(std::make_shared<const Node>(Node{TermKind::Var, std::move(name), std::move(type), {}, {}, {}, 1}));
}

Term Term::sym(std::string name, Type type)
{
  if (name.empty() || !type.valid()) {
    throw TypeError("symbol needs a name and a type");
  }
  return Term(std::make_shared<const Node>(Node{TermKind::Sym, std::move(name), std::move(type), {}, {}, {}, 1}));
}

Term Term::app(Term fun, Term arg)
{
  const Type& ft = fun.type();
  if (!ft.is_arrow()) {
    throw TypeError("cannot apply " + to_string(fun) + " of base type " + ft.to_string());
  }
  if (ft.dom() != arg.type()) {
    throw TypeError("argument " + to_string(arg) + " has type " + arg.type().to_string() + ", expected " +
                    ft.dom().to_string());
  }
  Type result = ft.cod();
  std::size_t size = fun.size() + arg.size();
  return Term(std::make_shared<const Node>(
      Node{TermKind::App, {}, std::move(result), {}, std::move(fun), std::move(arg), size}));
}

Term Term::apply(Term head, std::span<const Term> args)
{
  for (const Term& a : args) {
    head = app(std::move(head), a);
  }
  return head;
}

Term Term::lam(std::string var, Type var_type, Term body)
{
  if (var.empty() || !var_type.valid()) {
    throw TypeError("binder needs a name and a type");
  }
  Type t = Type::arrow(var_type, body.type());
  std::size_t size = body.size() + 1;
  return Term(std::make_shared<const Node>(
      Node{TermKind::Lam, std::move(var), std::move(t), std::move(var_type), std::move(body), {}, size}));
}

TermKind Term::kind() const
{
  return node_->kind;
}

const std::string& Term::name() const
{
  return node_->name;
}

const Type& Term::type() const
{
  return node_->type;
}

const Term& Term::fun() const
{
  if (!is_app()) {
    throw std::logic_error("fun() on a non-application");
  }
  return node_->a;
}

const Term& Term::arg() const
{
  if (!is_app()) {
    throw std::logic_error("arg() on a non-application");
  }
  return node_->b;
}

const Term& Term::body() const
{
  if (!is_lam()) {
    throw std::logic_error("body() on a non-abstraction");
  }
  return node_->a;
}

const Type& Term::binder_type() const
{
  if (!is_lam()) {
    throw std::logic_error("binder_type() on a non-abstraction");
  }
  return node_->binder_type;
}

std::size_t Term::size() const
{
  return node_->size;
}

const Term& Term::head() const
{
  const Term* t = this;
  while (t->is_app()) {
    t = &t->fun();
  }
  return *t;
}

std::vector<Term> Term::args() const
{
  std::vector<Term> out;
  const Term* t = this;
  while (t->is_app()) {
    out.push_back(t->arg());
    t = &t->fun();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::size_t Term::spine_length() const
{
  std::size_t n = 0;
  for (const Term* t = this; t->is_app(); t = &t->fun()) {
    ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------

void Signature::add_sort(const std::string& name)
{
  sorts_.insert(name);
}

void Signature::check_type(const Type& t) const
{
  std::vector<std::string> used;
  collect_sorts(t, used);
  for (const auto& s : used) {
    if (!has_sort(s)) {
      throw TypeError("undeclared sort " + s);
    }
  }
}

void Signature::add_symbol(const std::string& name, const Type& type)
{
  check_type(type);
  if (!symbols_.emplace(name, type).second) {
    throw TypeError("symbol " + name + " declared twice");
  }
}

const Type& Signature::symbol_type(const std::string& name) const
{
  auto it = symbols_.find(name);
  if (it == symbols_.end()) {
    throw TypeError("undeclared symbol " + name);
  }
  return it->second;
}

// ---------------------------------------------------------------------------

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::map<std::string, Type>& out)
{
  switch (t.kind()) {
  case TermKind::Var:
    if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) {
      out.emplace(t.name(), t.type());
    }
    break;
  case TermKind::Sym:
    break;
  case TermKind::App:
    collect_free(t.fun(), bound, out);
    collect_free(t.arg(), bound, out);
    break;
  case TermKind::Lam:
    bound.push_back(t.name());
    collect_free(t.body(), bound, out);
    bound.pop_back();
    break;
  }
}

bool alpha_rec(const Term& t, const Term& u, std::vector<std::string>& bt, std::vector<std::string>& bu)
{
  if (t.same_node(u) && bt.empty() && bu.empty()) {
    return true;
  }
  if (t.kind() != u.kind() || t.size() != u.size()) {
    return false;
  }
  switch (t.kind()) {
  case TermKind::Var: {
    auto it = std::find(bt.rbegin(), bt.rend(), t.name());
    auto iu = std::find(bu.rbegin(), bu.rend(), u.name());
    bool tb = it != bt.rend();
    bool ub = iu != bu.rend();
    if (tb != ub) {
      return false;
    }
    if (tb) {
      return (it - bt.rbegin()) == (iu - bu.rbegin());
    }
    return t.name() == u.name() && t.type() == u.type();
  }
  case TermKind::Sym:
    return t.name() == u.name();
  case TermKind::App:
    return alpha_rec(t.fun(), u.fun(), bt, bu) && alpha_rec(t.arg(), u.arg(), bt, bu);
  case TermKind::Lam: {
    if (t.binder_type() != u.binder_type()) {
      return false;
    }
    bt.push_back(t.name());
    bu.push_back(u.name());
    bool r = alpha_rec(t.body(), u.body(), bt, bu);
    bt.pop_back();
    bu.pop_back();
    return r;
  }
  }
  return false;
}

void key_rec(const Term& t, std::vector<std::string>& bound, std::string& out)
{
  switch (t.kind()) {
  case TermKind::Var: {
    auto it = std::find(bound.rbegin(), bound.rend(), t.name());
    if (it != bound.rend()) {
      out += '#';
      out += std::to_string(it - bound.rbegin());
    } else {
      out += "v:";
      out += t.name();
      out += ':';
      out += t.type().to_string();
    }
    break;
  }
  case TermKind::Sym:
    out += "s:";
    out += t.name();
    break;
  case TermKind::App:
    out += '(';
    key_rec(t.fun(), bound, out);
    out += ' ';
    key_rec(t.arg(), bound, out);
    out += ')';
    break;
  case TermKind::Lam:
    out += "\\";
    out += t.binder_type().to_string();
    out += '.';
    bound.push_back(t.name());
    key_rec(t.body(), bound, out);
    bound.pop_back();
    break;
  }
}

Term subst_rec(const Term& t, const Substitution& sigma, const std::set<std::string>& range_fv)
{
  switch (t.kind()) {
  case TermKind::Var: {
    auto it = sigma.find(t.name());
    if (it == sigma.end()) {
      return t;
    }
    if (it->second.type() != t.type()) {
      throw TypeError("substitution maps " + t.name() + ":" + t.type().to_string() + " to a term of type " +
                      it->second.type().to_string());
    }
    return it->second;
  }
  case TermKind::Sym:
    return t;
  case TermKind::App: {
    Term f = subst_rec(t.fun(), sigma, range_fv);
    Term a = subst_rec(t.arg(), sigma, range_fv);
    if (f.same_node(t.fun()) && a.same_node(t.arg())) {
      return t;
    }
    return Term::app(std::move(f), std::move(a));
  }
  case TermKind::Lam: {
    Substitution inner;
    auto body_fv = free_vars(t.body());
    for (const auto& [x, v] : sigma) {
      if (x != t.name() && body_fv.count(x)) {
        inner.emplace(x, v);
      }
    }
    if (inner.empty()) {
      return t;
    }
    std::string x = t.name();
    Term body = t.body();
    bool captured = false;
    for (const auto& [y, v] : inner) {
      if (occurs_free(x, v)) {
        captured = true;
        break;
      }
    }
    if (captured) {
      std::set<std::string> avoid = range_fv;
      avoid.insert(body_fv.begin(), body_fv.end());
      for (const auto& [y, v] : inner) {
        avoid.insert(y);
      }
      std::string fresh = fresh_name(x, avoid);
      body = subst_rec(body, {{x, Term::var(fresh, t.binder_type())}}, {fresh});
      x = fresh;
    }
    return Term::lam(x, t.binder_type(), subst_rec(body, inner, range_fv));
  }
  }
  return t;
}

void positions_rec(const Term& t, Position& prefix, std::vector<std::pair<Position, Term>>& out)
{
  out.emplace_back(prefix, t);
  if (t.is_lam()) {
    prefix.push_back(1);
    positions_rec(t.body(), prefix, out);
    prefix.pop_back();
    return;
  }
  const Term& h = t.head();
  auto args = t.args();
  if (h.is_lam() && !args.empty()) {
    prefix.push_back(0);
    positions_rec(h, prefix, out);
    prefix.pop_back();
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    prefix.push_back(static_cast<int>(i + 1));
    positions_rec(args[i], prefix, out);
    prefix.pop_back();
  }
}

Term replace_rec(const Term& t, const Position& p, std::size_t k, const Term& u)
{
  if (k == p.size()) {
    if (t.type() != u.type()) {
      throw TypeError("replacement changes type " + t.type().to_string() + " to " + u.type().to_string());
    }
    return u;
  }
  int idx = p[k];
  if (t.is_lam()) {
    if (idx != 1) {
      throw std::out_of_range("invalid position under abstraction");
    }
    return Term::lam(t.name(), t.binder_type(), replace_rec(t.body(), p, k + 1, u));
  }
  Term h = t.head();
  auto args = t.args();
  if (idx == 0 && h.is_lam() && !args.empty()) {
    h = replace_rec(h, p, k + 1, u);
  } else if (idx >= 1 && static_cast<std::size_t>(idx) <= args.size()) {
    args[idx - 1] = replace_rec(args[idx - 1], p, k + 1, u);
  } else {
    throw std::out_of_range("invalid position");
  }
  return Term::apply(h, args);
}

void beta_rec(const Term& t, std::vector<Term>& out)
{
  switch (t.kind()) {
  case TermKind::Var:
  case TermKind::Sym:
    return;
  case TermKind::App: {
    if (t.fun().is_lam()) {
      const Term& l = t.fun();
      out.push_back(substitute(l.body(), {{l.name(), t.arg()}}));
    }
    std::vector<Term> sub;
    beta_rec(t.fun(), sub);
    for (auto& r : sub) {
      out.push_back(Term::app(r, t.arg()));
    }
    sub.clear();
    beta_rec(t.arg(), sub);
    for (auto& r : sub) {
      out.push_back(Term::app(t.fun(), r));
    }
    return;
  }
  case TermKind::Lam: {
    std::vector<Term> sub;
    beta_rec(t.body(), sub);
    for (auto& r : sub) {
      out.push_back(Term::lam(t.name(), t.binder_type(), r));
    }
    return;
  }
  }
}

void dedupe(std::vector<Term>& ts)
{
  std::set<std::string> seen;
  std::vector<Term> out;
  for (auto& t : ts) {
    if (seen.insert(alpha_key(t)).second) {
      out.push_back(std::move(t));
    }
  }
  ts = std::move(out);
}

bool needs_parens_as_arg(const Term& t)
{
  return t.is_app() || t.is_lam();
}

void print_rec(const Term& t, std::string& out)
{
  switch (t.kind()) {
  case TermKind::Var:
  case TermKind::Sym:
    out += t.name();
    return;
  case TermKind::Lam:
    out += '\\';
    out += t.name();
    out += ':';
    out += t.binder_type().to_string();
    out += ". ";
    print_rec(t.body(), out);
    return;
  case TermKind::App: {
    const Term& h = t.head();
    if (h.is_lam()) {
      out += '(';
      print_rec(h, out);
      out += ')';
    } else {
      print_rec(h, out);
    }
    for (const Term& a : t.args()) {
      out += ' ';
      if (needs_parens_as_arg(a)) {
        out += '(';
        print_rec(a, out);
        out += ')';
      } else {
        print_rec(a, out);
      }
    }
    return;
  }
  }
}

void collect_domain_types(const Type& t, std::map<std::string, Type>& out)
{
  if (!t.is_arrow()) {
    return;
  }
  out.emplace(t.dom().to_string(), t.dom());
  collect_domain_types(t.dom(), out);
  collect_domain_types(t.cod(), out);
}

struct Enumerator {
  const Signature& sig;
  const std::vector<Term>& vars;
  EnumOptions opts;
  std::vector<Type> arg_types;
  std::set<std::string> reserved;
  std::vector<Term> env;

  std::vector<Term> exact(const Type& type, std::size_t n)
  {
    std::vector<Term> out;
    if (n == 0) {
      return out;
    }
    if (n == 1) {
      for (const Term& v : vars) {
        if (v.type() == type) {
          out.push_back(v);
        }
      }
      for (const Term& v : env) {
        if (v.type() == type) {
          out.push_back(v);
        }
      }
      for (const auto& [name, ty] : sig.symbols()) {
        if (ty == type) {
          out.push_back(Term::sym(name, ty));
        }
      }
      return out;
    }
    if (opts.allow_lambda && type.is_arrow()) {
      std::set<std::string> avoid = reserved;
      for (const Term& v : env) {
        avoid.insert(v.name());
      }
      Term z = Term::var(fresh_name("z", avoid), type.dom());
      env.push_back(z);
      for (Term& b : exact(type.cod(), n - 1)) {
        out.push_back(Term::lam(z.name(), type.dom(), std::move(b)));
      }
      env.pop_back();
    }
    for (const Type& a : arg_types) {
      Type ft = Type::arrow(a, type);
      for (std::size_t n1 = 1; n1 < n; ++n1) {
        auto funs = exact(ft, n1);
        if (funs.empty()) {
          continue;
        }
        auto as = exact(a, n - n1);
        for (const Term& f : funs) {
          for (const Term& x : as) {
            out.push_back(Term::app(f, x));
          }
        }
      }
    }
    return out;
  }
};

} // namespace

std::set<std::string> free_vars(const Term& t)
{
  std::set<std::string> out;
  for (auto& [k, v] : free_var_types(t)) {
    out.insert(k);
  }
  return out;
}

std::map<std::string, Type> free_var_types(const Term& t)
{
  std::vector<std::string> bound;
  std::map<std::string, Type> out;
  collect_free(t, bound, out);
  return out;
}

bool occurs_free(const std::string& x, const Term& t)
{
  switch (t.kind()) {
  case TermKind::Var:
    return t.name() == x;
  case TermKind::Sym:
    return false;
  case TermKind::App:
    return occurs_free(x, t.fun()) || occurs_free(x, t.arg());
  case TermKind::Lam:
    return t.name() != x && occurs_free(x, t.body());
  }
  return false;
}

bool alpha_eq(const Term& t, const Term& u)
{
  std::vector<std::string> bt, bu;
  return alpha_rec(t, u, bt, bu);
}

std::string alpha_key(const Term& t)
{
  std::vector<std::string> bound;
  std::string out;
  key_rec(t, bound, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid)
{
  std::string candidate = base;
  for (int i = 0; i < 3; ++i) {
    candidate += '\'';
    if (!avoid.count(candidate)) {
      return candidate;
    }
  }
  for (int n = 1;; ++n) {
    candidate = base + "_" + std::to_string(n);
    if (!avoid.count(candidate)) {
      return candidate;
    }
  }
}

Term substitute(const Term& t, const Substitution& sigma)
{
  if (sigma.empty()) {
    return t;
  }
  std::set<std::string> range_fv;
  for (const auto& [x, v] : sigma) {
    auto fv = free_vars(v);
    range_fv.insert(fv.begin(), fv.end());
  }
  return subst_rec(t, sigma, range_fv);
}

std::vector<std::pair<Position, Term>> subterm_positions(const Term& t)
{
  std::vector<std::pair<Position, Term>> out;
  Position prefix;
  positions_rec(t, prefix, out);
  return out;
}

Term subterm_at(const Term& t, const Position& p)
{
  Term cur = t;
  for (int idx : p) {
    if (cur.is_lam()) {
      if (idx != 1) {
        throw std::out_of_range("invalid position under abstraction");
      }
      cur = cur.body();
      continue;
    }
    auto args = cur.args();
    if (idx == 0 && cur.head().is_lam() && !args.empty()) {
      cur = cur.head();
    } else if (idx >= 1 && static_cast<std::size_t>(idx) <= args.size()) {
      cur = args[idx - 1];
    } else {
      throw std::out_of_range("invalid position");
    }
  }
  return cur;
}

Term replace_at(const Term& t, const Position& p, const Term& u)
{
  return replace_rec(t, p, 0, u);
}

std::vector<Term> beta_reducts(const Term& t)
{
  std::vector<Term> out;
  beta_rec(t, out);
  dedupe(out);
  return out;
}

std::vector<Term> binary_subterms(const Term& t)
{
  std::vector<Term> out;
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    if (cur.is_app()) {
      stack.push_back(cur.fun());
      stack.push_back(cur.arg());
    } else if (cur.is_lam()) {
      stack.push_back(cur.body());
    }
  }
  dedupe(out);
  return out;
}

bool is_first_order(const Term& t, const Signature& sig)
{
  const Term& h = t.head();
  auto args = t.args();
  if (h.is_var()) {
    return args.empty();
  }
  if (!h.is_sym() || !sig.has_symbol(h.name()) || sig.arity(h.name()) != args.size()) {
    return false;
  }
  return std::all_of(args.begin(), args.end(), [&](const Term& a) { return is_first_order(a, sig); });
}

std::string to_string(const Term& t)
{
  if (!t.valid()) {
    return "<none>";
  }
  std::string out;
  print_rec(t, out);
  return out;
}

std::vector<Term> enumerate_terms(const Signature& sig, const Type& type, std::size_t max_size,
                                  const std::vector<Term>& vars, EnumOptions opts)
{
  std::map<std::string, Type> doms;
  for (const auto& [name, ty] : sig.symbols()) {
    collect_domain_types(ty, doms);
  }
  for (const Term& v : vars) {
    collect_domain_types(v.type(), doms);
  }
  collect_domain_types(type, doms);

  Enumerator e{sig, vars, opts, {}, {}, {}};
  for (auto& [k, t] : doms) {
    e.arg_types.push_back(t);
  }
  for (const Term& v : vars) {
    e.reserved.insert(v.name());
  }
  for (const auto& [name, ty] : sig.symbols()) {
    e.reserved.insert(name);
  }
  std::vector<Term> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    auto layer = e.exact(type, n);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

} // namespace horco
