#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "horco/derivation.hpp"
#include "horco/order.hpp"
#include "horco/rewrite.hpp"

namespace horco {

/// Lambda-free, every symbol spine of base type, variables unapplied.
bool is_fo_shape(const Term& t);

/// Recursive path ordering. Memo tables live in the object; one instance per
/// (params) and thread.
class Rpo {
public:
  explicit Rpo(const OrderParams& params) : params_(params) {}
  /// Throws std::invalid_argument on non-first-order input.
  bool gt(const Term& t, const Term& u);
  bool ge(const Term& t, const Term& u) { return alpha_eq(t, u) || gt(t, u); }
  /// Derivation of t > u, or nullopt.
  std::optional<Derivation> derive(const Term& t, const Term& u);

private:
  bool gt_rec(const Term& t, const Term& u);
  Derivation build(const Term& t, const Term& u);

  const OrderParams& params_;
  std::unordered_map<std::string, bool> memo_;
};

std::optional<Derivation> rpo_gt(const OrderParams& params, const Term& t, const Term& u);

/// Inductive first-order computability ordering (arg, prec, call, red).
class Rco {
public:
  Rco(const OrderParams& params, Budget budget = {}) : params_(params), budget_(budget) {}
  /// Throws std::invalid_argument unless t is symbol-headed and both are
  /// first-order.
  bool gt(const Term& t, const Term& u);
  std::optional<Derivation> derive(const Term& t, const Term& u);

private:
  bool gt_rec(const Term& t, const Term& u);
  Derivation build(const Term& t, const Term& u);
  /// t > w for a strict subterm w of t, through (arg) and (red).
  Derivation to_subterm(const Term& t, const Term& w);

  const OrderParams& params_;
  Budget budget_;
  std::unordered_map<std::string, bool> memo_;
};

std::optional<Derivation> rco_gt(const OrderParams& params, const Term& t, const Term& u, Budget budget = {});

/// u ∈ CC_R^f(t⃗) for the first-order closure with R the rules of `trs`.
/// Throws std::invalid_argument when |t⃗| differs from the arity of f.
std::optional<Derivation> cc_fo_member(const Trs& trs, const std::string& f, const std::vector<Term>& ts,
                                       const Term& u, Budget budget = {});

enum class FixpointVariant {
  Transitive, ///< (red) with ->R+, (call) with ->R+ ∪ ⊳
  SingleStep, ///< both premises with R itself
};

struct FixpointRelation {
  std::vector<Term> universe;
  std::vector<std::vector<bool>> gt; ///< gt[i][j]: universe[i] > universe[j]
  std::size_t iterations = 0;

  std::optional<std::size_t> index_of(const Term& t) const;
  bool holds(const Term& t, const Term& u) const;
  std::size_t pair_count() const;
};

/// Least fixpoint of CR restricted to a subterm-closed universe, by Kleene
/// iteration from the empty relation. Terms outside the universe are
/// ignored; the universe is closed under subterms before use.
FixpointRelation rco_fixpoint_oracle(const OrderParams& params, const std::vector<Term>& universe,
                                     FixpointVariant variant = FixpointVariant::Transitive,
                                     bool enable_decomp = true);

} // namespace horco
