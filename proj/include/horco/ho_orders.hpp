#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "horco/derivation.hpp"
#include "horco/order.hpp"
#include "horco/rewrite.hpp"

namespace horco {

/// f >_F g through `params`, treating symbols missing from the precedence
/// as incomparable (equivalent to themselves only).
PrecResult safe_cmp(const OrderParams& params, const std::string& f, const std::string& g);

struct HorpoStats {
  std::size_t case6_checks = 0;
  /// Times one of the application sub-cases other than t1 >= u1, t2 >= u2
  /// type-checked. Expected to stay zero.
  std::size_t case6_trips = 0;
};

class Horpo {
public:
  explicit Horpo(const OrderParams& params, HorpoStats* stats = nullptr) : params_(params), stats_(stats) {}
  bool gt(const Term& t, const Term& u);
  bool ge(const Term& t, const Term& u) { return alpha_eq(t, u) || gt(t, u); }
  std::optional<Derivation> derive(const Term& t, const Term& u);

private:
  bool p_holds(const Term& t, const std::vector<Term>& ts, const Term& v);
  std::optional<std::size_t> case5_split(const Term& t, const std::vector<Term>& ts, const Term& u);
  std::vector<Derivation> p_witness(const Term& t, const std::vector<Term>& ts, const Term& v);
  Derivation build(const Term& t, const Term& u);

  const OrderParams& params_;
  HorpoStats* stats_;
  std::unordered_map<std::string, bool> memo_;
};

std::optional<Derivation> horpo_gt(const OrderParams& params, const Term& t, const Term& u,
                                   HorpoStats* stats = nullptr);

/// Bounded search for u ∈ CC_R^f(t⃗) and a ⊐ b, where f t⃗ is `root` and R
/// is `rview`. When `justify` is given, it holds one derivation per rule of
/// `rview` and reduction steps carry the justification of the rules they use.
class ClosureSearch {
public:
  ClosureSearch(const OrderParams& params, const RuleSet& rview, Term root, Budget budget,
                const std::vector<Derivation>* justify = nullptr);

  /// Variables from these terms may be applied to forward members; also
  /// widens the size bound for reductions. Call before the first query.
  void add_goal_context(const Term& goal);

  std::optional<Derivation> member(const Term& u);
  std::optional<Derivation> approx(const Term& a, const Term& b);

  /// A depth, step, size or capacity bound cut some branch of the search.
  bool budget_hit() const { return budget_hit_; }
  const Term& root() const { return root_; }

private:
  struct Cached {
    std::optional<Derivation> d;
    std::size_t remaining = 0;
  };

  std::optional<Derivation> member_rec(const Term& u, std::size_t depth);
  std::optional<Derivation> approx_rec(const Term& a, const Term& b, std::size_t depth);
  std::optional<Derivation> member_uncached(const Term& u, std::size_t depth);
  std::optional<Derivation> approx_uncached(const Term& a, const Term& b, std::size_t depth);
  std::optional<Derivation> try_call(const Term& u, std::size_t depth);
  std::optional<Derivation> try_base(const Term& a, const Term& b, std::size_t depth);
  std::vector<Term> red_candidates(const Term& a);

  void ensure_forward();
  void add_forward(const Term& t, Derivation d);
  Derivation steps_node(const std::vector<Term>& path);
  std::optional<std::vector<Term>> path_to(const Term& from, const Term& to);
  std::string hygienic(const std::string& x, const std::set<std::string>& extra = {});

  const OrderParams& params_;
  const RuleSet& rview_;
  const std::vector<Derivation>* justify_;
  Budget budget_;
  Term root_;
  std::string f_;
  std::vector<Term> ts_;
  std::set<std::string> forbidden_;
  std::set<std::string> reserved_;
  std::vector<Term> pool_;
  std::size_t size_cap_ = 0;
  bool budget_hit_ = false;

  bool forward_built_ = false;
  std::vector<std::pair<Term, Derivation>> forward_;
  std::unordered_map<std::string, std::size_t> forward_index_;
  std::unordered_map<std::string, Cached> memo_;
  std::set<std::string> in_progress_;
  std::map<std::pair<std::string, std::string>, std::optional<std::vector<Term>>> paths_;
};

/// u ∈ CC_R^f(t⃗) with R = `rview`.
std::optional<Derivation> cc_ho_member(const Trs& trs, const RuleSet& rview, const std::string& f,
                                       const std::vector<Term>& ts, const Term& u, Budget budget = {});

/// a ⊐_R^{f t⃗} b with R = `rview`.
std::optional<Derivation> size_approx_gt(const Trs& trs, const RuleSet& rview, const std::string& f,
                                         const std::vector<Term>& ts, const Term& a, const Term& b,
                                         Budget budget = {});

struct OrientResult {
  std::optional<Derivation> derivation;
  std::string reason;
  bool budget_hit = false;
};

/// rhs ∈ CC_R^f(t⃗) with R the rules of `trs`, plus the variable and type
/// side conditions.
OrientResult orient_rule_ex(const Trs& trs, const Rule& rule, Budget budget = {});
std::optional<Derivation> orient_rule(const Trs& trs, const Rule& rule, Budget budget = {});

/// Bounded least fixpoint of CR (whorco) and its closure by context (horco).
class HorcoEngine {
public:
  HorcoEngine(const OrderParams& params, Budget budget) : params_(params), budget_(budget) {}

  std::optional<Derivation> whorco_gt(const Term& t, const Term& u);
  std::optional<Derivation> horco_gt(const Term& t, const Term& u);
  /// t = w0 >horco w1 >horco ... >horco wn = u with 1 <= n <= max_chain.
  std::optional<std::vector<Derivation>> horco_chain(const Term& t, const Term& u, std::size_t max_chain);

  bool budget_hit() const { return budget_hit_; }
  void reset_budget_flag() { budget_hit_ = false; }

private:
  std::optional<Derivation> whorco_uncached(const Term& t, const Term& u);
  std::optional<Derivation> horco_rec(const Term& t, const Term& u, const std::set<std::string>& avoid);

  const OrderParams& params_;
  Budget budget_;
  bool budget_hit_ = false;
  std::unordered_map<std::string, std::optional<Derivation>> whorco_cache_;
  std::unordered_map<std::string, bool> whorco_hit_;
};

std::optional<Derivation> whorco_gt(const OrderParams& params, const Term& t, const Term& u, Budget budget = {});
std::optional<Derivation> horco_gt(const OrderParams& params, const Term& t, const Term& u, Budget budget = {});
bool horco_chain_gt(const OrderParams& params, const Term& t, const Term& u, std::size_t max_chain,
                    Budget budget = {});

/// Well-typed terms obtained from t by replacing subterms at common
/// positions with the corresponding subterms of u; t itself excluded.
std::vector<Term> merges(const Term& t, const Term& u);

} // namespace horco
