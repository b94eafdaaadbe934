#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "horco/term.hpp"

namespace horco {

/// Search limits shared by the bounded procedures.
struct Budget {
  std::size_t max_search_depth = 12;
  std::size_t max_red_steps = 4;
  std::size_t max_term_size_slack = 6;

  Budget scaled(std::size_t k) const
  {
    return Budget{max_search_depth * k, max_red_steps * k, max_term_size_slack * k};
  }
};

enum class JudgementKind {
  Rpo,      ///< rpo: T > U
  Rco,      ///< rco: T > U
  Horpo,    ///< horpo: T > U
  Horco,    ///< horco: T > U  (one context step)
  FoMember, ///< cc1[ROOT]: U  (first-order closure)
  Member,   ///< cc[ROOT]: U   (higher-order closure)
  Approx,   ///< sq[ROOT]: A > B
  Steps,    ///< steps: T0 ~> T1 ~> ... ~> Tn
};

/// The statement proved by a derivation node. `root` is used by the closure
/// kinds, `left`/`right` by the binary kinds (for members only `right`),
/// `path` by Steps.
struct Judgement {
  JudgementKind kind = JudgementKind::Rpo;
  Term root;
  Term left;
  Term right;
  std::vector<Term> path;

  static Judgement binary(JudgementKind k, Term l, Term r);
  static Judgement member(JudgementKind k, Term root, Term u);
  static Judgement approx(Term root, Term a, Term b);
  static Judgement steps(std::vector<Term> path);
};

bool judgement_eq(const Judgement& a, const Judgement& b);

/// Printed form used in reports. Free variables whose type is not given by
/// `declared` are listed in a leading `[x:T, ...]`.
std::string to_string(const Judgement& j, const std::map<std::string, Type>& declared = {});

struct Derivation {
  std::string rule;
  Judgement conclusion;
  std::vector<Derivation> children;

  std::size_t node_count() const;
};

/// Every label a derivation node may carry.
const std::vector<std::string>& derivation_labels();

/// Indented tree, one node per line.
std::string render_tree(const Derivation& d, const std::map<std::string, Type>& declared = {});

} // namespace horco
