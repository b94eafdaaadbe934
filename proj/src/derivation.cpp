#include "horco/derivation.hpp"

namespace horco {

Judgement Judgement::binary(JudgementKind k, Term l, Term r)
{
  Judgement j;
  j.kind = k;
  j.left = std::move(l);
  j.right = std::move(r);
  return j;
}

Judgement Judgement::member(JudgementKind k, Term root, Term u)
{
  Judgement j;
  j.kind = k;
  j.root = std::move(root);
  j.right = std::move(u);
  return j;
}

Judgement Judgement::approx(Term root, Term a, Term b)
{
  Judgement j;
  j.kind = JudgementKind::Approx;
  j.root = std::move(root);
  j.left = std::move(a);
  j.right = std::move(b);
  return j;
}

Judgement Judgement::steps(std::vector<Term> path)
{
  Judgement j;
  j.kind = JudgementKind::Steps;
  j.path = std::move(path);
  return j;
}

namespace {

bool opt_eq(const Term& a, const Term& b)
{
  if (a.valid() != b.valid()) {
    return false;
  }
  return !a.valid() || alpha_eq(a, b);
}

void collect_free(const Term& t, std::map<std::string, Type>& out)
{
  if (!t.valid()) {
    return;
  }
  for (const auto& [x, ty] : free_var_types(t)) {
    out.emplace(x, ty);
  }
}

} // namespace

bool judgement_eq(const Judgement& a, const Judgement& b)
{
  if (a.kind != b.kind || a.path.size() != b.path.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.path.size(); ++i) {
    if (!alpha_eq(a.path[i], b.path[i])) {
      return false;
    }
  }
  return opt_eq(a.root, b.root) && opt_eq(a.left, b.left) && opt_eq(a.right, b.right);
}

std::string to_string(const Judgement& j, const std::map<std::string, Type>& declared)
{
  std::map<std::string, Type> fv;
  collect_free(j.root, fv);
  collect_free(j.left, fv);
  collect_free(j.right, fv);
  for (const auto& t : j.path) {
    collect_free(t, fv);
  }
  std::string prefix;
  for (const auto& [x, ty] : fv) {
    auto it = declared.find(x);
    if (it != declared.end() && it->second == ty) {
      continue;
    }
    prefix += (prefix.empty() ? "[" : ", ") + x + ":" + ty.to_string();
  }
  if (!prefix.empty()) {
    prefix += "] ";
  }
  switch (j.kind) {
  case JudgementKind::Rpo:
    return prefix + "rpo: " + to_string(j.left) + " > " + to_string(j.right);
  case JudgementKind::Rco:
    return prefix + "rco: " + to_string(j.left) + " > " + to_string(j.right);
  case JudgementKind::Horpo:
    return prefix + "horpo: " + to_string(j.left) + " > " + to_string(j.right);
  case JudgementKind::Horco:
    return prefix + "horco: " + to_string(j.left) + " > " + to_string(j.right);
  case JudgementKind::FoMember:
    return prefix + "cc1[" + to_string(j.root) + "]: " + to_string(j.right);
  case JudgementKind::Member:
    return prefix + "cc[" + to_string(j.root) + "]: " + to_string(j.right);
  case JudgementKind::Approx:
    return prefix + "sq[" + to_string(j.root) + "]: " + to_string(j.left) + " > " + to_string(j.right);
  case JudgementKind::Steps: {
    std::string s = prefix + "steps: ";
    for (std::size_t i = 0; i < j.path.size(); ++i) {
      s += (i ? " ~> " : "") + to_string(j.path[i]);
    }
    return s;
  }
  }
  return prefix;
}

std::size_t Derivation::node_count() const
{
  std::size_t n = 1;
  for (const auto& c : children) {
    n += c.node_count();
  }
  return n;
}

const std::vector<std::string>& derivation_labels()
{
  static const std::vector<std::string> labels{
      "arg",   "decomp", "prec",   "call",   "red",    "app",    "var",    "lam",
      "base⊐", "lam⊐",   "red⊐",   "trans⊐", "rpo1",   "rpo2",   "rpo3",   "horpo1",
      "horpo2", "horpo3", "horpo4", "horpo5", "horpo6", "horpo7", "context",
  };
  return labels;
}

namespace {

void render_rec(const Derivation& d, const std::map<std::string, Type>& declared, std::size_t depth,
                std::string& out)
{
  out.append(depth * 2, ' ');
  out += "(" + d.rule + ") " + to_string(d.conclusion, declared) + "\n";
  for (const auto& c : d.children) {
    render_rec(c, declared, depth + 1, out);
  }
}

} // namespace

std::string render_tree(const Derivation& d, const std::map<std::string, Type>& declared)
{
  std::string out;
  render_rec(d, declared, 0, out);
  return out;
}

} // namespace horco
