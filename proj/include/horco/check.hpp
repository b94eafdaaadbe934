#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "horco/derivation.hpp"
#include "horco/rewrite.hpp"
#include "horco/validate.hpp"

namespace horco {

enum class Criterion { Rpo, Rco, Horpo, Horco };
enum class OutputFormat { Text, Json };

std::string to_string(Criterion c);
std::optional<Criterion> parse_criterion(const std::string& s);

/// A system or configuration the checker cannot work with.
class CheckError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CheckConfig {
  Criterion criterion = Criterion::Horco;
  Budget budget;
  bool search_precedence = false;
  OutputFormat format = OutputFormat::Text;
};

struct RuleReport {
  Rule rule;
  bool oriented = false;
  std::optional<Derivation> derivation;
  std::string reason; ///< empty when oriented
  bool budget_hit = false;
};

struct CheckReport {
  Criterion criterion = Criterion::Horco;
  Budget budget;
  std::vector<RuleReport> rules;
  /// Set when the precedence and statuses were found by search.
  std::optional<OrderParams> searched;
  /// Declared variables, left implicit when printing conclusions.
  std::map<std::string, Type> vars;

  std::size_t oriented_count() const;
  bool all_oriented() const { return oriented_count() == rules.size(); }
};

/// Throws CheckError when rpo or rco is asked for on a system that is not
/// first-order.
void require_criterion_fits(const Trs& trs, Criterion c);

/// Orients every rule with the chosen ordering, using trs.params. Each
/// derivation is validated before it is reported.
CheckReport run_check(const Trs& trs, const CheckConfig& config);

/// Tries every precedence that puts the ordered classes of the defined
/// symbols above the remaining symbols, keeping the declarations of `trs`,
/// together with every status assignment compatible with pinned statuses.
/// Returns the report of the first assignment orienting all rules.
/// Throws CheckError when more than 6 symbols are defined.
std::optional<CheckReport> search_precedence(const Trs& trs, const CheckConfig& config);

std::string emit_report(const CheckReport& report, OutputFormat format);

/// The judgement a derivation for `rule` must conclude under `c`.
Judgement expected_conclusion(Criterion c, const Rule& rule);

/// Validates a derivation claimed to orient `rule` under `c`.
ValidationResult validate_rule_derivation(const Trs& trs, Criterion c, const Rule& rule, const Derivation& d);

struct ReportedDerivation {
  std::optional<Rule> rule;
  std::optional<Criterion> criterion;
  Derivation derivation;
};

/// Reads either a full JSON report (every non-null derivation is returned
/// with its rule) or a single derivation node. Throws std::invalid_argument
/// on malformed input and ParseError on unreadable terms.
std::vector<ReportedDerivation> read_json_derivations(std::string_view json, const Trs& trs);

} // namespace horco
