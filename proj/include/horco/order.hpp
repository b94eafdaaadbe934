#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "horco/term.hpp"

namespace horco {

enum class Status { LexLR, LexRL, Mul };

std::string to_string(Status s);
/// "lex-lr", "lex-rl" or "mul"; nullopt otherwise.
std::optional<Status> parse_status(const std::string& s);

enum class PrecResult { Greater, Equivalent, NotGreaterOrEquiv };

/// Quasi-ordering on symbols given by equivalence classes and strict edges
/// between classes; Greater is the transitive closure of the edges.
class Precedence {
public:
  void add_symbol(const std::string& f);
  void add_equivalent(const std::string& f, const std::string& g);
  void add_greater(const std::string& f, const std::string& g);

  bool has_symbol(const std::string& f) const { return index_.count(f) != 0; }
  /// Throws std::invalid_argument on an undeclared symbol.
  PrecResult cmp(const std::string& f, const std::string& g) const;
  bool greater(const std::string& f, const std::string& g) const { return cmp(f, g) == PrecResult::Greater; }
  bool equivalent(const std::string& f, const std::string& g) const
  {
    return cmp(f, g) == PrecResult::Equivalent;
  }

  const std::vector<std::string>& symbols() const { return names_; }
  /// Equivalence classes, each sorted, in order of first declaration.
  std::vector<std::vector<std::string>> classes() const;
  /// Declared strict edges (greater, smaller) in declaration order.
  const std::vector<std::pair<std::string, std::string>>& edges() const { return edge_names_; }
  const std::vector<std::pair<std::string, std::string>>& equivalences() const { return equiv_names_; }

  /// A sequence of symbols f1 > f2 > ... > f1 (through classes), if any.
  std::optional<std::vector<std::string>> find_cycle() const;

private:
  std::size_t idx(const std::string& f) const;
  std::size_t find(std::size_t i) const;
  void recompute();

  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::pair<std::string, std::string>> edge_names_;
  std::vector<std::pair<std::string, std::string>> equiv_names_;
  std::vector<std::vector<bool>> reach_; // over class representatives (by symbol index)
};

/// Precedence plus per-symbol status; undeclared statuses default to lex-lr.
struct OrderParams {
  Precedence prec;
  std::map<std::string, Status> status;

  Status status_of(const std::string& f) const
  {
    auto it = status.find(f);
    return it == status.end() ? Status::LexLR : it->second;
  }
};

/// Empty iff the strict part is acyclic and statuses are constant on classes.
std::vector<std::string> validate_precedence(const Precedence& p, const std::map<std::string, Status>& statuses);

/// Strict Dershowitz-Manna multiset extension: n = (m - X) + Y with X a
/// non-empty sub-multiset of m and every y in Y below some x in X.
/// Equality of elements is `eq`.
template <class T, class Rel, class Eq>
bool mul_ext(std::span<const T> m, std::span<const T> n, Rel&& rel, Eq&& eq)
{
  const std::size_t ms = m.size();
  if (ms == 0) {
    return false;
  }
  if (ms > 16) {
    // Difference method; coincides with the definition for strict orders.
    std::vector<bool> used_n(n.size(), false);
    std::vector<std::size_t> rest_m;
    for (std::size_t i = 0; i < ms; ++i) {
      bool matched = false;
      for (std::size_t j = 0; j < n.size(); ++j) {
        if (!used_n[j] && eq(m[i], n[j])) {
          used_n[j] = matched = true;
          break;
        }
      }
      if (!matched) {
        rest_m.push_back(i);
      }
    }
    if (rest_m.empty()) {
      return false;
    }
    for (std::size_t j = 0; j < n.size(); ++j) {
      if (used_n[j]) {
        continue;
      }
      bool dominated = false;
      for (std::size_t i : rest_m) {
        if (rel(m[i], n[j])) {
          dominated = true;
          break;
        }
      }
      if (!dominated) {
        return false;
      }
    }
    return true;
  }
  // X ranges over non-empty index subsets of m.
  for (std::uint32_t mask = 1; mask < (1u << ms); ++mask) {
    // m - X must be a sub-multiset of n; what remains of n is Y.
    std::vector<bool> used_n(n.size(), false);
    bool ok = true;
    for (std::size_t i = 0; i < ms && ok; ++i) {
      if (mask & (1u << i)) {
        continue;
      }
      bool matched = false;
      for (std::size_t j = 0; j < n.size(); ++j) {
        if (!used_n[j] && eq(m[i], n[j])) {
          used_n[j] = matched = true;
          break;
        }
      }
      ok = matched;
    }
    if (!ok) {
      continue;
    }
    for (std::size_t j = 0; j < n.size() && ok; ++j) {
      if (used_n[j]) {
        continue;
      }
      bool dominated = false;
      for (std::size_t i = 0; i < ms && !dominated; ++i) {
        dominated = (mask & (1u << i)) && rel(m[i], n[j]);
      }
      ok = dominated;
    }
    if (ok) {
      return true;
    }
  }
  return false;
}

/// Lexicographic extension scanning left-to-right (`left_to_right`) or
/// right-to-left. The first differing component decides; when all compared
/// components are equal the longer list is greater.
template <class T, class Rel, class Eq>
bool lex_ext(std::span<const T> a, std::span<const T> b, bool left_to_right, Rel&& rel, Eq&& eq)
{
  const std::size_t k = std::min(a.size(), b.size());
  for (std::size_t step = 0; step < k; ++step) {
    const T& x = left_to_right ? a[step] : a[a.size() - 1 - step];
    const T& y = left_to_right ? b[step] : b[b.size() - 1 - step];
    if (eq(x, y)) {
      continue;
    }
    return rel(x, y);
  }
  return a.size() > b.size();
}

using TermRel = std::function<bool(const Term&, const Term&)>;

bool status_ext(Status s, std::span<const Term> ts, std::span<const Term> us, const TermRel& rel);

/// Index pairs (i, k) with ts[i] rel us[k] that a successful status_ext
/// relies on: the deciding pair for lex, every related unequal pair for mul.
std::vector<std::pair<std::size_t, std::size_t>> status_witnesses(Status s, std::span<const Term> ts,
                                                                  std::span<const Term> us, const TermRel& rel);

/// f t⃗ vs g u⃗: f >_F g, or f ≃_F g and t⃗ (rel)^stat_f u⃗. Throws on an
/// undeclared symbol.
bool stat_cmp(const OrderParams& params, const TermRel& rel, const std::string& f, std::span<const Term> ts,
              const std::string& g, std::span<const Term> us);

} // namespace horco
