#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "horco/order.hpp"
#include "horco/term.hpp"

namespace horco {

/// Rewrite rule f t⃗ -> u with FV(u) ⊆ FV(f t⃗) and equal types.
struct Rule {
  Term lhs;
  Term rhs;
};

/// Throws std::invalid_argument when the rule invariants do not hold.
Rule make_rule(Term lhs, Term rhs);
/// Reason the pair is not a rule, or nullopt.
std::optional<std::string> rule_violation(const Term& lhs, const Term& rhs);

/// Rules indexed by the head symbol of their left-hand side.
class RuleSet {
public:
  RuleSet() = default;
  explicit RuleSet(const std::vector<Rule>& rules);

  void add(Rule r);
  const std::vector<Rule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }
  std::size_t size() const { return rules_.size(); }
  /// Indices of rules whose lhs is headed by `f`.
  const std::vector<std::size_t>& with_head(const std::string& f) const;

private:
  std::vector<Rule> rules_;
  std::map<std::string, std::vector<std::size_t>> by_head_;
};

/// A parsed system: signature, declared variables, rules, precedence and
/// statuses.
struct Trs {
  Signature sig;
  std::map<std::string, Type> vars;
  std::vector<Rule> rules;
  OrderParams params;
  /// Symbols whose status was given explicitly in the input.
  std::set<std::string> pinned_status;

  RuleSet rule_set() const { return RuleSet(rules); }
};

/// Syntactic matching modulo alpha: σ with pattern σ ≡α subject.
std::optional<Substitution> match_syntactic(const Term& pattern, const Term& subject);

struct SymbolSplit {
  std::set<std::string> constant;
  std::set<std::string> defined;
};

/// Defined symbols head some rule's lhs; every other declared symbol is constant.
SymbolSplit constant_split(const Trs& trs);

enum class ReductionKind { Beta, Rules, Both };

/// All one-step reducts, deduplicated up to alpha.
std::vector<Term> one_step_reducts(const RuleSet& rules, const Term& t, ReductionKind kind);

struct ReachBudget {
  std::size_t max_steps = 4;
  std::size_t max_term_size = 64;
};

struct ReachResult {
  std::vector<Term> terms;          ///< reached terms, t excluded unless on a cycle
  std::vector<std::ptrdiff_t> parent; ///< index into terms, -1 = t itself
  bool truncated = false;            ///< a step or size bound cut the search
};

/// Terms reachable from `t` in 1..max_steps βR-steps; intermediates above
/// max_term_size are dropped.
ReachResult reach(const RuleSet& rules, const Term& t, const ReachBudget& budget,
                  ReductionKind kind = ReductionKind::Both);

std::vector<Term> reducts_plus(const RuleSet& rules, const Term& t, const ReachBudget& budget);

/// from = w0 -> w1 -> ... -> wn = to, n >= 1, within budget.
std::optional<std::vector<Term>> reduction_path(const RuleSet& rules, const Term& from, const Term& to,
                                                const ReachBudget& budget, bool* truncated = nullptr);

} // namespace horco
