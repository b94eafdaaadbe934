#include <doctest.h>

#include <random>

#include "horco/fo_orders.hpp"
#include "horco/order.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace horco;
using namespace horco::test;

namespace {

bool mul_int(const std::vector<int>& m, const std::vector<int>& n)
{
  return mul_ext<int>(std::span<const int>(m), std::span<const int>(n), [](int a, int b) { return a > b; },
                      [](int a, int b) { return a == b; });
}

bool lex_int(const std::vector<int>& m, const std::vector<int>& n, bool ltr)
{
  return lex_ext<int>(std::span<const int>(m), std::span<const int>(n), ltr, [](int a, int b) { return a > b; },
                      [](int a, int b) { return a == b; });
}

void multisets(int universe, std::size_t max_len, std::vector<int>& cur, int from, std::vector<std::vector<int>>& out)
{
  out.push_back(cur);
  if (cur.size() == max_len) {
    return;
  }
  for (int v = from; v < universe; ++v) {
    cur.push_back(v);
    multisets(universe, max_len, cur, v, out);
    cur.pop_back();
  }
}

bool strict_sub(const Term& big, const Term& small)
{
  for (const auto& a : big.args()) {
    if (alpha_eq(a, small) || strict_sub(a, small)) {
      return true;
    }
  }
  return false;
}

} // namespace

TEST_CASE("precedence comparison")
{
  Trs d = parse_trs(read_file(corpus("differentiation.trs")));
  CHECK(d.params.prec.cmp("D", "times") == PrecResult::Greater);
  CHECK(d.params.prec.cmp("times", "D") == PrecResult::NotGreaterOrEquiv);
  CHECK(d.params.prec.cmp("D", "D") == PrecResult::Equivalent);
  Precedence p;
  p.add_greater("D", "plus");
  p.add_greater("plus", "zero");
  CHECK(p.greater("D", "zero"));
  CHECK_THROWS_AS(p.cmp("D", "nope"), std::invalid_argument);
}

TEST_CASE("precedence validation")
{
  Precedence p;
  p.add_greater("f", "g");
  p.add_greater("g", "f");
  auto d = validate_precedence(p, {});
  REQUIRE(d.size() == 1);
  CHECK(d[0].find("cycle") != std::string::npos);

  Precedence q;
  q.add_equivalent("f", "g");
  auto e = validate_precedence(q, {{"f", Status::Mul}, {"g", Status::LexLR}});
  REQUIRE(e.size() == 1);
  CHECK(e[0].find("status") != std::string::npos);
  CHECK(validate_precedence(Precedence{}, {}).empty());
}

TEST_CASE("validation accepts exactly the acyclic precedences")
{
  std::mt19937 rng(7);
  for (int round = 0; round < 300; ++round) {
    std::size_t n = 2 + rng() % 5;
    std::size_t m = rng() % 8;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    Precedence p;
    for (std::size_t i = 0; i < n; ++i) {
      p.add_symbol("f" + std::to_string(i));
    }
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t a = rng() % n, b = rng() % n;
      edges.emplace_back(a, b);
      p.add_greater("f" + std::to_string(a), "f" + std::to_string(b));
    }
    CHECK(validate_precedence(p, {}).empty() == !has_cycle(n, edges));
  }
}

TEST_CASE("multiset extension examples")
{
  CHECK(mul_int({3, 1}, {2, 2, 1}));
  CHECK(mul_split_oracle({3, 1}, {2, 2, 1}));
  CHECK(mul_int({1}, {}));
  CHECK_FALSE(mul_int({2, 2}, {2, 2}));
  CHECK_FALSE(mul_int({}, {}));
}

TEST_CASE("multiset extension matches the splitting oracle")
{
  std::vector<std::vector<int>> ms;
  std::vector<int> cur;
  multisets(4, 4, cur, 0, ms);
  CHECK(ms.size() == 70);
  std::size_t agree = 0;
  for (const auto& a : ms) {
    for (const auto& b : ms) {
      agree += mul_int(a, b) == mul_split_oracle(a, b);
    }
  }
  CHECK(agree == ms.size() * ms.size());
}

TEST_CASE("extensions of a strict order are irreflexive and transitive")
{
  std::vector<std::vector<int>> ms;
  std::vector<int> cur;
  multisets(3, 3, cur, 0, ms);
  for (const auto& a : ms) {
    CHECK_FALSE(mul_int(a, a));
    CHECK_FALSE(lex_int(a, a, true));
    for (const auto& b : ms) {
      for (const auto& c : ms) {
        if (mul_int(a, b) && mul_int(b, c)) {
          CHECK(mul_int(a, c));
        }
        if (lex_int(a, b, false) && lex_int(b, c, false)) {
          CHECK(lex_int(a, c, false));
        }
      }
    }
  }
}

TEST_CASE("lexicographic extension")
{
  Trs t = sys(R"(
sort B L
symbol s : B -> B
symbol fcons : (B -> B) -> L -> L
var x : B
var y : B
var F : B -> B
var l : L
)");
  auto sub = [](const Term& a, const Term& b) { return strict_sub(a, b); };
  auto eq = [](const Term& a, const Term& b) { return alpha_eq(a, b); };
  std::vector<Term> a{term(t, "s x"), term(t, "y")}, b{term(t, "x"), term(t, "y")};
  CHECK(lex_ext<Term>(std::span<const Term>(a), std::span<const Term>(b), true, sub, eq));
  std::vector<Term> c{term(t, "x"), term(t, "fcons F l")}, d{term(t, "x"), term(t, "l")};
  CHECK(lex_ext<Term>(std::span<const Term>(c), std::span<const Term>(d), false, sub, eq));
  CHECK_FALSE(lex_ext<Term>(std::span<const Term>(a), std::span<const Term>(a), true, sub, eq));
  CHECK(lex_int({1, 2}, {1}, true));
  CHECK_FALSE(lex_int({1}, {1, 2}, true));
}

TEST_CASE("status comparison")
{
  Trs t = parse_trs(read_file(corpus("minus_div.trs")));
  Rpo rpo(t.params);
  TermRel rel = [&](const Term& a, const Term& b) { return rpo.gt(a, b); };
  std::vector<Term> ts{term(t, "s x"), term(t, "s y")}, us{term(t, "x"), term(t, "y")};
  CHECK(stat_cmp(t.params, rel, "div", ts, "minus", us));
  CHECK(stat_cmp(t.params, rel, "minus", ts, "minus", us));
  CHECK_FALSE(stat_cmp(t.params, rel, "minus", ts, "minus", ts));
  CHECK_FALSE(stat_cmp(t.params, rel, "s", ts, "minus", us));
  OrderParams lexp = t.params;
  lexp.status["minus"] = Status::LexLR;
  CHECK_FALSE(stat_cmp(lexp, rel, "minus", us, "minus", us));
  CHECK_THROWS(stat_cmp(t.params, rel, "nope", ts, "minus", us));
}

TEST_CASE("status comparison admits no long descending chains")
{
  Trs t = sys(R"(
sort B
symbol 0 : B
symbol s : B -> B
symbol m : B -> B -> B status mul
)");
  Rpo rpo(t.params);
  TermRel rel = [&](const Term& a, const Term& b) { return rpo.gt(a, b); };
  auto ts = enumerate_terms(t.sig, Type::base("B"), 4, {}, EnumOptions{false});
  std::vector<Term> ms;
  for (const auto& u : ts) {
    if (u.head().name() == "m") {
      ms.push_back(u);
    }
  }
  // Longest chain under the relation induced by stat_cmp on m-headed terms.
  const std::size_t n = ms.size();
  std::vector<std::vector<bool>> gt(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto a = ms[i].args(), b = ms[j].args();
      gt[i][j] = stat_cmp(t.params, rel, "m", a, "m", b);
    }
  }
  std::vector<std::size_t> len(n, 0);
  for (std::size_t round = 0; round <= n; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (gt[i][j]) {
          len[i] = std::max(len[i], len[j] + 1);
        }
      }
    }
  }
  for (auto l : len) {
    CHECK(l < n);
  }
}
