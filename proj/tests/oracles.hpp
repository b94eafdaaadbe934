#pragma once

// Brute-force reference implementations used to cross-check the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "horco/type.hpp"

namespace horco::test {

/// Dershowitz-Manna by explicit splitting: N = (M - X) + Y with X non-empty
/// and every y in Y below some x in X.
inline bool mul_split_oracle(const std::vector<int>& m, const std::vector<int>& n)
{
  const std::size_t k = m.size();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> keep, x;
    for (std::size_t i = 0; i < k; ++i) {
      ((mask >> i) & 1u ? x : keep).push_back(m[i]);
    }
    std::multiset<int> rest(n.begin(), n.end());
    bool sub = true;
    for (int v : keep) {
      auto it = rest.find(v);
      if (it == rest.end()) {
        sub = false;
        break;
      }
      rest.erase(it);
    }
    if (!sub) {
      continue;
    }
    bool dom = std::all_of(rest.begin(), rest.end(), [&](int y) {
      return std::any_of(x.begin(), x.end(), [&](int xv) { return xv > y; });
    });
    if (dom) {
      return true;
    }
  }
  return false;
}

/// Number of terms of sort B of exactly each size 1..max over constants
/// `nullary` (including variables), unary and binary symbols B -> ... -> B.
inline std::vector<std::uint64_t> count_terms(std::size_t nullary, std::size_t unary, std::size_t binary,
                                              std::size_t max)
{
  std::vector<std::uint64_t> c(max + 1, 0);
  for (std::size_t n = 1; n <= max; ++n) {
    if (n == 1) {
      c[n] = nullary;
      continue;
    }
    c[n] = unary * c[n - 1];
    for (std::size_t a = 1; a + 1 < n; ++a) {
      c[n] += binary * c[a] * c[n - 1 - a];
    }
  }
  return c;
}

/// Every position of a base occurrence together with the number of domains
/// above it, by walking the type tree directly.
inline void base_occurrences(const Type& t, std::vector<int>& pos, int flips,
                             std::vector<std::pair<std::vector<int>, std::pair<std::string, bool>>>& out)
{
  if (t.is_base()) {
    out.push_back({pos, {t.name(), flips % 2 == 0}});
    return;
  }
  pos.push_back(1);
  base_occurrences(t.dom(), pos, flips + 1, out);
  pos.back() = 2;
  base_occurrences(t.cod(), pos, flips, out);
  pos.pop_back();
}

/// Acc by enumeration: argument i is accessible iff every occurrence of the
/// output sort in its type is under an even number of domains.
inline std::set<std::size_t> acc_oracle(const Type& f)
{
  std::set<std::size_t> out;
  auto doms = f.domains();
  std::string b = f.result().name();
  for (std::size_t i = 0; i < doms.size(); ++i) {
    std::vector<std::pair<std::vector<int>, std::pair<std::string, bool>>> occ;
    std::vector<int> pos;
    base_occurrences(doms[i], pos, 0, occ);
    bool ok = std::all_of(occ.begin(), occ.end(),
                          [&](const auto& o) { return o.second.first != b || o.second.second; });
    if (ok) {
      out.insert(i + 1);
    }
  }
  return out;
}

/// Reachability cycle test on a directed graph, independent of Precedence.
inline bool has_cycle(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
{
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (auto [a, b] : edges) {
    r[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (r[i][k] && r[k][j]) {
          r[i][j] = true;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (r[i][i]) {
      return true;
    }
  }
  return false;
}

} // namespace horco::test
