// horco-check: orient rewrite systems with path and computability orderings.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "horco/check.hpp"
#include "horco/fo_orders.hpp"
#include "horco/ho_orders.hpp"
#include "horco/syntax.hpp"

using namespace horco;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;

struct Options {
  std::string file;
  std::string criterion = "horco";
  std::size_t depth = 12;
  std::size_t red_steps = 4;
  std::size_t size_slack = 6;
  std::size_t chain = 3;
  bool search = false;
  std::string format = "text";
  std::size_t universe_size = 4;
  std::string left;
  std::string right;
  std::string json_path = "-";
};

std::string slurp(const std::string& path)
{
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  ss << in.rdbuf();
  return ss.str();
}

Budget budget_of(const Options& o)
{
  if (o.depth == 0 || o.red_steps == 0 || o.size_slack == 0) {
    throw CheckError("budgets must be positive");
  }
  return Budget{o.depth, o.red_steps, o.size_slack};
}

Criterion criterion_of(const Options& o)
{
  auto c = parse_criterion(o.criterion);
  if (!c) {
    throw CheckError("unknown criterion '" + o.criterion + "'");
  }
  return *c;
}

OutputFormat format_of(const Options& o)
{
  return o.format == "json" ? OutputFormat::Json : OutputFormat::Text;
}

int cmd_check(const Options& o, const Trs& trs)
{
  CheckConfig cfg{criterion_of(o), budget_of(o), o.search, format_of(o)};
  CheckReport rep;
  if (cfg.search_precedence) {
    auto found = search_precedence(trs, cfg);
    if (!found) {
      std::cout << (cfg.format == OutputFormat::Json ? "null\n" : "no precedence and status orient every rule\n");
      return kNo;
    }
    rep = std::move(*found);
  } else {
    rep = run_check(trs, cfg);
  }
  std::cout << emit_report(rep, cfg.format);
  return rep.all_oriented() ? kOk : kNo;
}

int cmd_compare(const Options& o, const Trs& trs)
{
  Criterion c = criterion_of(o);
  Budget b = budget_of(o);
  Term t = parse_term(o.left, trs.sig, trs.vars);
  Term u = parse_term(o.right, trs.sig, trs.vars);
  if ((c == Criterion::Rpo || c == Criterion::Rco) && (!is_fo_shape(t) || !is_fo_shape(u))) {
    throw CheckError(to_string(c) + " compares first-order terms only");
  }
  if (c == Criterion::Rco && !t.head().is_sym()) {
    throw CheckError("rco needs a left side headed by a symbol");
  }
  std::vector<Derivation> ds;
  bool exhausted = false;
  switch (c) {
  case Criterion::Rpo:
    if (auto d = rpo_gt(trs.params, t, u)) {
      ds.push_back(*d);
    }
    break;
  case Criterion::Rco:
    if (auto d = rco_gt(trs.params, t, u, b)) {
      ds.push_back(*d);
    }
    break;
  case Criterion::Horpo:
    if (auto d = horpo_gt(trs.params, t, u)) {
      ds.push_back(*d);
    }
    break;
  case Criterion::Horco: {
    HorcoEngine eng(trs.params, b);
    if (auto chain = eng.horco_chain(t, u, o.chain)) {
      ds = std::move(*chain);
    }
    exhausted = ds.empty() && eng.budget_hit();
    break;
  }
  }
  for (const auto& d : ds) {
    auto v = validate_derivation(d, ValidationContext{trs.params, {}});
    if (!v) {
      throw std::logic_error("derivation rejected by the validator at (" + v.rule + ") " + v.conclusion + ": " +
                             v.message);
    }
  }
  bool holds = !ds.empty();
  if (format_of(o) == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["criterion"] = to_string(c);
    j["lhs"] = to_string(t);
    j["rhs"] = to_string(u);
    j["holds"] = holds;
    j["budget_exhausted"] = exhausted;
    CheckReport tmp;
    j["derivations"] = nlohmann::ordered_json::array();
    for (const auto& d : ds) {
      tmp.rules.push_back(RuleReport{Rule{t, u}, true, d, "", false});
    }
    tmp.vars = trs.vars;
    auto parsed = nlohmann::ordered_json::parse(emit_report(tmp, OutputFormat::Json));
    for (const auto& r : parsed["rules"]) {
      j["derivations"].push_back(r["derivation"]);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (holds ? "true" : exhausted ? "false (budget exhausted)" : "false") << "\n";
    for (const auto& d : ds) {
      std::cout << render_tree(d, trs.vars);
    }
  }
  return holds ? kOk : kNo;
}

int cmd_oracle(const Options& o, const Trs& trs)
{
  std::vector<Term> vars;
  for (const auto& [x, ty] : trs.vars) {
    if (ty.is_base()) {
      vars.push_back(Term::var(x, ty));
    }
  }
  std::vector<Term> universe;
  for (const auto& s : trs.sig.sorts()) {
    for (auto& t : enumerate_terms(trs.sig, Type::base(s), o.universe_size, vars, EnumOptions{false})) {
      if (is_first_order(t, trs.sig)) {
        universe.push_back(std::move(t));
      }
    }
  }
  auto rel = rco_fixpoint_oracle(trs.params, universe);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < rel.universe.size(); ++i) {
    for (std::size_t j = 0; j < rel.universe.size(); ++j) {
      if (rel.gt[i][j]) {
        pairs.emplace_back(to_string(rel.universe[i]), to_string(rel.universe[j]));
      }
    }
  }
  if (format_of(o) == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["universe"] = rel.universe.size();
    j["iterations"] = rel.iterations;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : pairs) {
      j["pairs"].push_back({a, b});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& [a, b] : pairs) {
      std::cout << a << " > " << b << "\n";
    }
    std::cout << "# universe " << rel.universe.size() << ", pairs " << pairs.size() << ", iterations "
              << rel.iterations << "\n";
  }
  return kOk;
}

int cmd_validate(const Options& o, const Trs& trs)
{
  auto items = read_json_derivations(slurp(o.json_path), trs);
  bool all_ok = true;
  for (const auto& it : items) {
    ValidationResult v;
    std::string what;
    if (it.rule && it.criterion) {
      v = validate_rule_derivation(trs, *it.criterion, *it.rule, it.derivation);
      what = to_string(it.rule->lhs) + " -> " + to_string(it.rule->rhs);
    } else {
      v = validate_derivation(it.derivation, ValidationContext{trs.params, trs.rules});
      what = to_string(it.derivation.conclusion, trs.vars);
    }
    if (v) {
      std::cout << "ok: " << what << "\n";
    } else {
      all_ok = false;
      std::cout << "invalid: " << what << "\n  at (" << v.rule << ") " << v.conclusion << ": " << v.message << "\n";
    }
  }
  return all_ok ? kOk : kNo;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Termination orderings for first-order and higher-order rewrite systems"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("FILE", o.file, "system file")->required();
    sub->add_option("--criterion", o.criterion, "rpo, rco, horpo or horco")
        ->check(CLI::IsMember({"rpo", "rco", "horpo", "horco"}))
        ->capture_default_str();
    sub->add_option("--depth", o.depth, "search depth bound")->capture_default_str();
    sub->add_option("--red-steps", o.red_steps, "reduction steps bound")->capture_default_str();
    sub->add_option("--size-slack", o.size_slack, "term size slack for reductions")->capture_default_str();
    sub->add_option("--chain", o.chain, "longest horco chain for compare")->capture_default_str();
    sub->add_flag("--search-precedence", o.search, "search precedence and statuses");
    sub->add_option("--format", o.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    sub->add_option("--universe-size", o.universe_size, "term size bound for oracle")->capture_default_str();
  };
  auto* check = app.add_subcommand("check", "orient every rule of a system");
  common(check);
  auto* compare = app.add_subcommand("compare", "decide LEFT > RIGHT");
  common(compare);
  compare->add_option("LEFT", o.left, "left term")->required();
  compare->add_option("RIGHT", o.right, "right term")->required();
  auto* oracle = app.add_subcommand("oracle", "dump the first-order fixpoint relation");
  common(oracle);
  auto* validate = app.add_subcommand("validate", "re-check JSON derivations");
  common(validate);
  validate->add_option("--json", o.json_path, "report or derivation file, - for stdin")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    Trs trs = parse_trs(slurp(o.file));
    if (*check) {
      return cmd_check(o, trs);
    }
    if (*compare) {
      return cmd_compare(o, trs);
    }
    if (*oracle) {
      return cmd_oracle(o, trs);
    }
    return cmd_validate(o, trs);
  } catch (const ParseError& e) {
    std::cerr << o.file << ":" << e.what() << "\n";
  } catch (const CheckError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const TypeError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kInputError;
}
