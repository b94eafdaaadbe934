#pragma once

#include <string>
#include <vector>

#include "horco/derivation.hpp"
#include "horco/order.hpp"
#include "horco/rewrite.hpp"

namespace horco {

struct ValidationContext {
  const OrderParams& params;
  /// Rules available to reduction steps in addition to those justified
  /// inside the derivation itself.
  std::vector<Rule> rules;
};

struct ValidationResult {
  bool ok = true;
  std::string rule;       ///< label of the first failing node
  std::string conclusion; ///< its conclusion, printed
  std::string message;    ///< the violated condition

  explicit operator bool() const { return ok; }
};

/// Re-checks every node against the schema of its label, children first.
ValidationResult validate_derivation(const Derivation& d, const ValidationContext& ctx);

/// A derivation of rhs ∈ CC(lhs) together with the side conditions of CR:
/// FV(rhs) ⊆ FV(lhs) and equal types.
ValidationResult validate_orientation(const Derivation& d, const Rule& rule, const ValidationContext& ctx);

} // namespace horco
