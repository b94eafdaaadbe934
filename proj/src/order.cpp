#include "horco/order.hpp"

#include <stdexcept>

namespace horco {

std::string to_string(Status s)
{
  switch (s) {
  case Status::LexLR:
    return "lex-lr";
  case Status::LexRL:
    return "lex-rl";
  case Status::Mul:
    return "mul";
  }
  return "?";
}

std::optional<Status> parse_status(const std::string& s)
{
  if (s == "lex-lr" || s == "lex") {
    return Status::LexLR;
  }
  if (s == "lex-rl") {
    return Status::LexRL;
  }
  if (s == "mul") {
    return Status::Mul;
  }
  return std::nullopt;
}

void Precedence::add_symbol(const std::string& f)
{
  if (index_.count(f)) {
    return;
  }
  index_.emplace(f, names_.size());
  parent_.push_back(names_.size());
  names_.push_back(f);
  recompute();
}

void Precedence::add_equivalent(const std::string& f, const std::string& g)
{
  add_symbol(f);
  add_symbol(g);
  std::size_t a = find(idx(f));
  std::size_t b = find(idx(g));
  if (a != b) {
    parent_[std::max(a, b)] = std::min(a, b);
  }
  equiv_names_.emplace_back(f, g);
  recompute();
}

void Precedence::add_greater(const std::string& f, const std::string& g)
{
  add_symbol(f);
  add_symbol(g);
  edge_names_.emplace_back(f, g);
  recompute();
}

std::size_t Precedence::idx(const std::string& f) const
{
  auto it = index_.find(f);
  if (it == index_.end()) {
    throw std::invalid_argument("symbol " + f + " not in precedence");
  }
  return it->second;
}

std::size_t Precedence::find(std::size_t i) const
{
  while (parent_[i] != i) {
    i = parent_[i];
  }
  return i;
}

void Precedence::recompute()
{
  const std::size_t n = names_.size();
  reach_.assign(n, std::vector<bool>(n, false));
  for (const auto& [f, g] : edge_names_) {
    reach_[find(idx(f))][find(idx(g))] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach_[i][k]) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (reach_[k][j]) {
          reach_[i][j] = true;
        }
      }
    }
  }
}

PrecResult Precedence::cmp(const std::string& f, const std::string& g) const
{
  std::size_t a = find(idx(f));
  std::size_t b = find(idx(g));
  if (a == b) {
    return PrecResult::Equivalent;
  }
  return reach_[a][b] ? PrecResult::Greater : PrecResult::NotGreaterOrEquiv;
}

std::vector<std::vector<std::string>> Precedence::classes() const
{
  std::map<std::size_t, std::vector<std::string>> by_root;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    std::size_t r = find(i);
    if (!by_root.count(r)) {
      order.push_back(r);
    }
    by_root[r].push_back(names_[i]);
  }
  std::vector<std::vector<std::string>> out;
  for (std::size_t r : order) {
    auto cls = by_root[r];
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

std::optional<std::vector<std::string>> Precedence::find_cycle() const
{
  const std::size_t n = names_.size();
  // DFS over class representatives using declared edges.
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [f, g] : edge_names_) {
    adj[find(idx(f))].push_back(find(idx(g)));
  }
  std::vector<int> colour(n, 0);
  std::vector<std::size_t> stack;
  std::optional<std::vector<std::string>> found;
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    colour[v] = 1;
    stack.push_back(v);
    for (std::size_t w : adj[v]) {
      if (colour[w] == 1) {
        std::vector<std::string> cyc;
        auto it = std::find(stack.begin(), stack.end(), w);
        for (; it != stack.end(); ++it) {
          cyc.push_back(names_[*it]);
        }
        cyc.push_back(names_[w]);
        found = cyc;
        return true;
      }
      if (colour[w] == 0 && dfs(w)) {
        return true;
      }
    }
    stack.pop_back();
    colour[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (find(v) == v && colour[v] == 0 && dfs(v)) {
      break;
    }
  }
  return found;
}

std::vector<std::string> validate_precedence(const Precedence& p, const std::map<std::string, Status>& statuses)
{
  std::vector<std::string> diags;
  if (auto cyc = p.find_cycle()) {
    std::string msg = "precedence cycle: ";
    for (std::size_t i = 0; i < cyc->size(); ++i) {
      msg += (i ? " > " : "") + (*cyc)[i];
    }
    diags.push_back(msg);
  }
  auto status_of = [&](const std::string& f) {
    auto it = statuses.find(f);
    return it == statuses.end() ? Status::LexLR : it->second;
  };
  for (const auto& cls : p.classes()) {
    for (std::size_t i = 1; i < cls.size(); ++i) {
      if (status_of(cls[i]) != status_of(cls[0])) {
        diags.push_back("status mismatch in equivalence class: " + cls[0] + " is " + to_string(status_of(cls[0])) +
                        " but " + cls[i] + " is " + to_string(status_of(cls[i])));
      }
    }
  }
  return diags;
}

bool status_ext(Status s, std::span<const Term> ts, std::span<const Term> us, const TermRel& rel)
{
  auto eq = [](const Term& a, const Term& b) { return alpha_eq(a, b); };
  switch (s) {
  case Status::LexLR:
    return lex_ext(ts, us, true, rel, eq);
  case Status::LexRL:
    return lex_ext(ts, us, false, rel, eq);
  case Status::Mul:
    return mul_ext(ts, us, rel, eq);
  }
  return false;
}

std::vector<std::pair<std::size_t, std::size_t>> status_witnesses(Status s, std::span<const Term> ts,
                                                                  std::span<const Term> us, const TermRel& rel)
{
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (s == Status::Mul) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t k = 0; k < us.size(); ++k) {
        if (!alpha_eq(ts[i], us[k]) && rel(ts[i], us[k])) {
          out.emplace_back(i, k);
        }
      }
    }
    return out;
  }
  const bool lr = s == Status::LexLR;
  const std::size_t n = std::min(ts.size(), us.size());
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t i = lr ? step : ts.size() - 1 - step;
    std::size_t k = lr ? step : us.size() - 1 - step;
    if (alpha_eq(ts[i], us[k])) {
      continue;
    }
    if (rel(ts[i], us[k])) {
      out.emplace_back(i, k);
    }
    break;
  }
  return out;
}

bool stat_cmp(const OrderParams& params, const TermRel& rel, const std::string& f, std::span<const Term> ts,
              const std::string& g, std::span<const Term> us)
{
  switch (params.prec.cmp(f, g)) {
  case PrecResult::Greater:
    return true;
  case PrecResult::Equivalent:
    return status_ext(params.status_of(f), ts, us, rel);
  case PrecResult::NotGreaterOrEquiv:
    return false;
  }
  return false;
}

} // namespace horco
