#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "horco/type.hpp"

namespace horco {

enum class TermKind { Var, Sym, App, Lam };

/// Simply-typed term with curried constants. Terms carry their type and are
/// well-typed by construction; `app` rejects domain mismatches.
///
/// Equality in this library is alpha-equivalence (`alpha_eq`); the binder
/// names stored in Lam nodes are only a representation detail.
class Term {
public:
  Term() = default;

  static Term var(std::string name, Type type);
  static Term sym(std::string name, Type type);
  static Term app(Term fun, Term arg);
  static Term apply(Term head, std::span<const Term> args);
  static Term lam(std::string var, Type var_type, Term body);

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const;
  bool is_var() const { return kind() == TermKind::Var; }
  bool is_sym() const { return kind() == TermKind::Sym; }
  bool is_app() const { return kind() == TermKind::App; }
  bool is_lam() const { return kind() == TermKind::Lam; }

  /// Variable or symbol name, or the binder name of an abstraction.
  const std::string& name() const;
  const Type& type() const;

  const Term& fun() const;
  const Term& arg() const;
  const Term& body() const;
  const Type& binder_type() const;

  /// Number of Var, Sym and Lam nodes. Application nodes are not counted,
  /// so `s (s 0)` has size 3.
  std::size_t size() const;

  /// Spine view: the term is head() applied to args().
  const Term& head() const;
  std::vector<Term> args() const;
  std::size_t spine_length() const;

  bool same_node(const Term& o) const { return node_ == o.node_; }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using Substitution = std::map<std::string, Term>;
using Position = std::vector<int>;

/// Sorts and symbol declarations.
class Signature {
public:
  void add_sort(const std::string& name);
  bool has_sort(const std::string& name) const { return sorts_.count(name) != 0; }
  /// Throws TypeError on an undeclared sort or a redeclaration.
  void add_symbol(const std::string& name, const Type& type);

  bool has_symbol(const std::string& name) const { return symbols_.count(name) != 0; }
  const Type& symbol_type(const std::string& name) const;
  std::size_t arity(const std::string& name) const { return symbol_type(name).arity(); }
  Term symbol(const std::string& name) const { return Term::sym(name, symbol_type(name)); }

  /// Throws TypeError if `t` mentions a sort not declared here.
  void check_type(const Type& t) const;

  const std::set<std::string>& sorts() const { return sorts_; }
  const std::map<std::string, Type>& symbols() const { return symbols_; }

private:
  std::set<std::string> sorts_;
  std::map<std::string, Type> symbols_;
};

inline const Type& type_of(const Term& t) { return t.type(); }

std::set<std::string> free_vars(const Term& t);
/// Free variables together with their types.
std::map<std::string, Type> free_var_types(const Term& t);
bool occurs_free(const std::string& x, const Term& t);

bool alpha_eq(const Term& t, const Term& u);
/// A string that is equal for two terms iff they are alpha-equivalent.
std::string alpha_key(const Term& t);

struct AlphaLess {
  bool operator()(const Term& a, const Term& b) const { return alpha_key(a) < alpha_key(b); }
};

/// A name based on `base` that is not in `avoid`: x', x'', ... then x_N.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// Capture-avoiding simultaneous substitution. Throws TypeError when a
/// binding does not preserve the type of its variable.
Term substitute(const Term& t, const Substitution& sigma);

/// Spine positions: index i >= 1 selects the i-th argument of the spine;
/// inside an abstraction index 1 selects the body; index 0 selects the head
/// of a spine whose head is an abstraction.
std::vector<std::pair<Position, Term>> subterm_positions(const Term& t);
/// Throws std::out_of_range on an invalid position.
Term subterm_at(const Term& t, const Position& p);
/// Throws std::out_of_range on an invalid position, TypeError when the
/// replacement changes the type.
Term replace_at(const Term& t, const Position& p, const Term& u);

/// Every one-step beta reduct, deduplicated up to alpha.
std::vector<Term> beta_reducts(const Term& t);

/// All subterms in the binary App/Lam structure, including partial
/// applications and abstraction bodies (with their bound variable free).
std::vector<Term> binary_subterms(const Term& t);

/// Lam-free, every spine headed by a symbol applied to exactly its arity or
/// by a variable with no arguments.
bool is_first_order(const Term& t, const Signature& sig);

/// Printed in the input grammar (`f (g x) \y:B. y`).
std::string to_string(const Term& t);

struct EnumOptions {
  bool allow_lambda = true;
};

/// Every well-typed term of type `type` with at most `max_size` nodes, each
/// exactly once up to alpha. Argument types of applications range over the
/// domain types occurring in the signature, the variable pool and `type`.
std::vector<Term> enumerate_terms(const Signature& sig, const Type& type, std::size_t max_size,
                                  const std::vector<Term>& vars, EnumOptions opts = {});

} // namespace horco
