#include "horco/check.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <json.hpp>

#include "horco/fo_orders.hpp"
#include "horco/ho_orders.hpp"
#include "horco/syntax.hpp"

namespace horco {

using ojson = nlohmann::ordered_json;

std::string to_string(Criterion c)
{
  switch (c) {
  case Criterion::Rpo:
    return "rpo";
  case Criterion::Rco:
    return "rco";
  case Criterion::Horpo:
    return "horpo";
  case Criterion::Horco:
    return "horco";
  }
  return "?";
}

std::optional<Criterion> parse_criterion(const std::string& s)
{
  for (auto c : {Criterion::Rpo, Criterion::Rco, Criterion::Horpo, Criterion::Horco}) {
    if (to_string(c) == s) {
      return c;
    }
  }
  return std::nullopt;
}

std::size_t CheckReport::oriented_count() const
{
  return static_cast<std::size_t>(
      std::count_if(rules.begin(), rules.end(), [](const RuleReport& r) { return r.oriented; }));
}

void require_criterion_fits(const Trs& trs, Criterion c)
{
  if (c != Criterion::Rpo && c != Criterion::Rco) {
    return;
  }
  for (const auto& r : trs.rules) {
    if (!is_first_order(r.lhs, trs.sig) || !is_first_order(r.rhs, trs.sig) || !is_fo_shape(r.lhs) ||
        !is_fo_shape(r.rhs)) {
      throw CheckError(to_string(c) + " needs a first-order system; rule " + to_string(r.lhs) + " -> " +
                       to_string(r.rhs) + " is not first-order");
    }
  }
}

Judgement expected_conclusion(Criterion c, const Rule& rule)
{
  switch (c) {
  case Criterion::Rpo:
    return Judgement::binary(JudgementKind::Rpo, rule.lhs, rule.rhs);
  case Criterion::Rco:
    return Judgement::binary(JudgementKind::Rco, rule.lhs, rule.rhs);
  case Criterion::Horpo:
    return Judgement::binary(JudgementKind::Horpo, rule.lhs, rule.rhs);
  case Criterion::Horco:
    break;
  }
  return Judgement::member(JudgementKind::Member, rule.lhs, rule.rhs);
}

ValidationResult validate_rule_derivation(const Trs& trs, Criterion c, const Rule& rule, const Derivation& d)
{
  if (c == Criterion::Horco) {
    return validate_orientation(d, rule, ValidationContext{trs.params, trs.rules});
  }
  auto res = validate_derivation(d, ValidationContext{trs.params, {}});
  if (res && !judgement_eq(d.conclusion, expected_conclusion(c, rule))) {
    res.ok = false;
    res.rule = d.rule;
    res.conclusion = to_string(d.conclusion);
    res.message = "conclusion does not state the rule";
  }
  return res;
}

namespace {

RuleReport check_rule(const Trs& trs, const CheckConfig& config, const Rule& rule)
{
  RuleReport out;
  out.rule = rule;
  std::optional<Derivation> d;
  switch (config.criterion) {
  case Criterion::Rpo:
    d = rpo_gt(trs.params, rule.lhs, rule.rhs);
    break;
  case Criterion::Rco:
    d = rco_gt(trs.params, rule.lhs, rule.rhs, config.budget);
    break;
  case Criterion::Horpo:
    d = horpo_gt(trs.params, rule.lhs, rule.rhs);
    break;
  case Criterion::Horco: {
    auto res = orient_rule_ex(trs, rule, config.budget);
    d = std::move(res.derivation);
    out.budget_hit = res.budget_hit;
    out.reason = res.reason;
    break;
  }
  }
  if (!d) {
    if (out.reason.empty()) {
      out.reason = "not oriented";
    }
    return out;
  }
  auto v = validate_rule_derivation(trs, config.criterion, rule, *d);
  if (!v) {
    out.reason = "derivation rejected by the validator at (" + v.rule + ") " + v.conclusion + ": " + v.message;
    return out;
  }
  out.oriented = true;
  out.reason.clear();
  out.derivation = std::move(d);
  return out;
}

} // namespace

CheckReport run_check(const Trs& trs, const CheckConfig& config)
{
  require_criterion_fits(trs, config.criterion);
  CheckReport rep;
  rep.criterion = config.criterion;
  rep.budget = config.budget;
  rep.vars = trs.vars;
  for (const auto& r : trs.rules) {
    rep.rules.push_back(check_rule(trs, config, r));
  }
  return rep;
}

namespace {

/// Calls `visit` with every ordered partition of {0..n-1} as a list of
/// blocks, highest first. Stops when `visit` returns true.
bool ordered_partitions(std::size_t n, const std::function<bool(const std::vector<std::vector<std::size_t>>&)>& visit)
{
  std::vector<std::size_t> rgs(n, 0);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) -> bool {
    if (i == n) {
      std::vector<std::vector<std::size_t>> bs(blocks);
      for (std::size_t k = 0; k < n; ++k) {
        bs[rgs[k]].push_back(k);
      }
      std::vector<std::size_t> perm(blocks);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<std::vector<std::size_t>> ordered;
        for (auto p : perm) {
          ordered.push_back(bs[p]);
        }
        if (visit(ordered)) {
          return true;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      return false;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      if (rec(i + 1, std::max(blocks, b + 1))) {
        return true;
      }
    }
    return false;
  };
  return rec(0, 0);
}

bool orients_all(const Trs& trs, const CheckConfig& config)
{
  return std::all_of(trs.rules.begin(), trs.rules.end(),
                     [&](const Rule& r) { return check_rule(trs, config, r).oriented; });
}

} // namespace

std::optional<CheckReport> search_precedence(const Trs& trs, const CheckConfig& config)
{
  require_criterion_fits(trs, config.criterion);
  auto split = constant_split(trs);
  std::vector<std::string> defined(split.defined.begin(), split.defined.end());
  if (defined.size() > 6) {
    throw CheckError("precedence search is limited to 6 defined symbols, found " + std::to_string(defined.size()));
  }
  const auto& base = trs.params;
  std::optional<CheckReport> found;
  ordered_partitions(defined.size(), [&](const std::vector<std::vector<std::size_t>>& blocks) {
    Precedence p;
    for (const auto& f : base.prec.symbols()) {
      p.add_symbol(f);
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::string& rep = defined[blocks[b].front()];
      for (auto i : blocks[b]) {
        if (defined[i] != rep) {
          p.add_equivalent(rep, defined[i]);
        }
      }
      if (b + 1 < blocks.size()) {
        p.add_greater(rep, defined[blocks[b + 1].front()]);
      }
    }
    if (!blocks.empty()) {
      for (const auto& c : split.constant) {
        p.add_greater(defined[blocks.back().front()], c);
      }
    }
    for (const auto& [f, g] : base.prec.equivalences()) {
      p.add_equivalent(f, g);
    }
    for (const auto& [f, g] : base.prec.edges()) {
      p.add_greater(f, g);
    }
    if (p.find_cycle()) {
      return false;
    }
    // Status choices per class holding a defined symbol of arity >= 2.
    std::vector<std::vector<std::string>> free_classes;
    std::map<std::string, Status> fixed;
    for (const auto& cls : p.classes()) {
      std::optional<Status> pinned;
      bool conflict = false;
      bool varies = false;
      for (const auto& f : cls) {
        if (trs.pinned_status.count(f)) {
          auto s = base.status_of(f);
          conflict = conflict || (pinned && *pinned != s);
          pinned = s;
        }
        varies = varies || (split.defined.count(f) && trs.sig.arity(f) >= 2);
      }
      if (conflict) {
        return false;
      }
      if (pinned || !varies) {
        for (const auto& f : cls) {
          fixed[f] = pinned ? *pinned : base.status_of(f);
        }
      } else {
        free_classes.push_back(cls);
      }
    }
    const Status choices[] = {Status::LexLR, Status::LexRL, Status::Mul};
    std::size_t combos = 1;
    for (std::size_t i = 0; i < free_classes.size(); ++i) {
      combos *= 3;
    }
    for (std::size_t code = 0; code < combos; ++code) {
      Trs cand = trs;
      cand.params.prec = p;
      cand.params.status = fixed;
      std::size_t c = code;
      for (const auto& cls : free_classes) {
        for (const auto& f : cls) {
          cand.params.status[f] = choices[c % 3];
        }
        c /= 3;
      }
      if (!validate_precedence(cand.params.prec, cand.params.status).empty()) {
        continue;
      }
      if (orients_all(cand, config)) {
        found = run_check(cand, config);
        found->searched = cand.params;
        return true;
      }
    }
    return false;
  });
  return found;
}

namespace {

std::vector<std::string> describe_prec(const OrderParams& params)
{
  std::vector<std::string> out;
  for (const auto& [f, g] : params.prec.equivalences()) {
    out.push_back(f + " ~ " + g);
  }
  for (const auto& [f, g] : params.prec.edges()) {
    out.push_back(f + " > " + g);
  }
  return out;
}

ojson node_json(const Derivation& d, const std::map<std::string, Type>& vars)
{
  ojson children = ojson::array();
  for (const auto& c : d.children) {
    children.push_back(node_json(c, vars));
  }
  ojson n;
  n["rule"] = d.rule;
  n["conclusion"] = to_string(d.conclusion, vars);
  n["children"] = std::move(children);
  return n;
}

Derivation node_from_json(const ojson& j, const Trs& trs)
{
  if (!j.is_object() || !j.contains("rule") || !j.contains("conclusion") || !j["rule"].is_string() ||
      !j["conclusion"].is_string()) {
    throw std::invalid_argument("derivation node needs string fields \"rule\" and \"conclusion\"");
  }
  Derivation d;
  d.rule = j["rule"].get<std::string>();
  const auto& labels = derivation_labels();
  if (std::find(labels.begin(), labels.end(), d.rule) == labels.end()) {
    throw std::invalid_argument("unknown derivation label '" + d.rule + "'");
  }
  d.conclusion = parse_judgement(j["conclusion"].get<std::string>(), trs.sig, trs.vars);
  if (j.contains("children")) {
    if (!j["children"].is_array()) {
      throw std::invalid_argument("\"children\" must be an array");
    }
    for (const auto& c : j["children"]) {
      d.children.push_back(node_from_json(c, trs));
    }
  }
  return d;
}

} // namespace

std::string emit_report(const CheckReport& report, OutputFormat format)
{
  if (format == OutputFormat::Json) {
    ojson root;
    root["version"] = 1;
    root["criterion"] = to_string(report.criterion);
    ojson rules = ojson::array();
    for (const auto& r : report.rules) {
      ojson e;
      e["lhs"] = to_string(r.rule.lhs);
      e["rhs"] = to_string(r.rule.rhs);
      e["oriented"] = r.oriented;
      e["derivation"] = r.derivation ? node_json(*r.derivation, report.vars) : ojson(nullptr);
      e["reason"] = r.oriented ? ojson(nullptr) : ojson(r.reason);
      rules.push_back(std::move(e));
    }
    root["rules"] = std::move(rules);
    ojson summary;
    summary["oriented"] = report.oriented_count();
    summary["total"] = report.rules.size();
    if (report.searched) {
      summary["precedence"] = describe_prec(*report.searched);
      ojson st = ojson::object();
      for (const auto& [f, s] : report.searched->status) {
        st[f] = to_string(s);
      }
      summary["status"] = std::move(st);
    }
    root["summary"] = std::move(summary);
    return root.dump(2) + "\n";
  }
  std::string out = "criterion: " + to_string(report.criterion) + " (depth " +
                    std::to_string(report.budget.max_search_depth) + ", red-steps " +
                    std::to_string(report.budget.max_red_steps) + ", size-slack " +
                    std::to_string(report.budget.max_term_size_slack) + ")\n";
  if (report.searched) {
    out += "precedence found:";
    auto ps = describe_prec(*report.searched);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      out += (i ? ", " : " ") + ps[i];
    }
    out += "\nstatus:";
    for (const auto& [f, s] : report.searched->status) {
      out += " " + f + "=" + to_string(s);
    }
    out += "\n";
  }
  for (std::size_t i = 0; i < report.rules.size(); ++i) {
    const auto& r = report.rules[i];
    out += "\nrule " + std::to_string(i + 1) + ": " + to_string(r.rule.lhs) + " -> " + to_string(r.rule.rhs) + "\n";
    if (r.oriented) {
      out += "  oriented\n";
      std::string tree = render_tree(*r.derivation, report.vars);
      std::size_t pos = 0;
      while (pos < tree.size()) {
        auto nl = tree.find('\n', pos);
        if (nl == std::string::npos) {
          nl = tree.size();
        }
        out += "    " + tree.substr(pos, nl - pos) + "\n";
        pos = nl + 1;
      }
    } else {
      out += "  not oriented: " + r.reason + "\n";
    }
  }
  out += "\nsummary: " + std::to_string(report.oriented_count()) + "/" + std::to_string(report.rules.size()) +
         " rules oriented\n";
  return out;
}

std::vector<ReportedDerivation> read_json_derivations(std::string_view json, const Trs& trs)
{
  ojson j;
  try {
    j = ojson::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  std::vector<ReportedDerivation> out;
  if (j.is_object() && j.contains("rules")) {
    std::optional<Criterion> crit;
    if (j.contains("criterion") && j["criterion"].is_string()) {
      crit = parse_criterion(j["criterion"].get<std::string>());
      if (!crit) {
        throw std::invalid_argument("unknown criterion " + j["criterion"].dump());
      }
    }
    if (!j["rules"].is_array()) {
      throw std::invalid_argument("\"rules\" must be an array");
    }
    for (const auto& e : j["rules"]) {
      if (!e.is_object() || !e.contains("derivation") || e["derivation"].is_null()) {
        continue;
      }
      if (!e.contains("lhs") || !e.contains("rhs") || !e["lhs"].is_string() || !e["rhs"].is_string()) {
        throw std::invalid_argument("rule entries need string fields \"lhs\" and \"rhs\"");
      }
      Rule r{parse_term(e["lhs"].get<std::string>(), trs.sig, trs.vars),
             parse_term(e["rhs"].get<std::string>(), trs.sig, trs.vars)};
      out.push_back({r, crit, node_from_json(e["derivation"], trs)});
    }
    return out;
  }
  out.push_back({std::nullopt, std::nullopt, node_from_json(j, trs)});
  return out;
}

} // namespace horco
