#include <doctest.h>

#include "horco/type_analysis.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace horco;
using namespace horco::test;

namespace {

Type B() { return Type::base("B"); }
Type C() { return Type::base("C"); }

void all_types(std::size_t depth, std::vector<Type>& out)
{
  if (depth == 0) {
    return;
  }
  std::vector<Type> smaller;
  all_types(depth - 1, smaller);
  out = {B(), C()};
  for (const auto& a : smaller) {
    for (const auto& b : smaller) {
      out.push_back(Type::arrow(a, b));
    }
  }
}

} // namespace

TEST_CASE("signed positions")
{
  CHECK(pos_signed(B(), Polarity::Positive) == std::set<TypePosition>{{}});
  CHECK(pos_signed(B(), Polarity::Negative).empty());
  CHECK(pos_signed(Type::arrow(B(), C()), Polarity::Positive) == std::set<TypePosition>{{2}});
  CHECK(pos_signed(Type::arrow(B(), C()), Polarity::Negative) == std::set<TypePosition>{{1}});
  Type t = Type::arrow(Type::arrow(B(), C()), Type::base("D"));
  CHECK(pos_signed(t, Polarity::Positive) == std::set<TypePosition>{{1, 1}, {2}});
  CHECK(negate(negate(Polarity::Positive)) == Polarity::Positive);
}

TEST_CASE("base positions and positivity")
{
  Type dp = Type::arrow(Type::base("D"), Type::base("P"));
  CHECK(pos_of_base("P", dp) == std::set<TypePosition>{{2}});
  CHECK(pos_of_base("B", C()).empty());
  CHECK(pos_of_base("B", Type::arrow(B(), B())) == std::set<TypePosition>{{1}, {2}});
  CHECK(occurs_only_positively("P", dp));
  CHECK(occurs_only_positively("B", B()));
  CHECK_FALSE(occurs_only_positively("B", Type::arrow(B(), B())));
}

TEST_CASE("accessible arguments of the example symbols")
{
  Trs pa = parse_trs(read_file(corpus("process_algebra.trs")));
  CHECK(acc("sigma", pa.sig) == std::set<std::size_t>{1});
  Trs d = parse_trs(read_file(corpus("differentiation.trs")));
  CHECK(acc("times", d.sig) == std::set<std::size_t>{1, 2});
  Trs l = parse_trs(read_file(corpus("lists.trs")));
  CHECK(acc("fcons", l.sig) == std::set<std::size_t>{1, 2});
  CHECK(acc(Type::arrow(Type::arrow(B(), B()), B())).empty());
}

TEST_CASE("signed positions partition the base positions")
{
  std::vector<Type> ts;
  all_types(3, ts);
  for (const auto& t : ts) {
    auto pos = pos_signed(t, Polarity::Positive);
    auto neg = pos_signed(t, Polarity::Negative);
    std::set<TypePosition> all = pos_of_base("B", t);
    auto c = pos_of_base("C", t);
    all.insert(c.begin(), c.end());
    std::set<TypePosition> uni = pos;
    uni.insert(neg.begin(), neg.end());
    CHECK(uni == all);
    CHECK(uni.size() == pos.size() + neg.size());
  }
}

TEST_CASE("acc agrees with the enumeration oracle")
{
  std::vector<Type> ts;
  all_types(3, ts);
  for (const auto& a : ts) {
    for (const auto& b : ts) {
      for (const auto& res : {B(), C()}) {
        Type f = Type::arrows({a, b}, res);
        CHECK(acc(f) == acc_oracle(f));
      }
    }
  }
}

TEST_CASE("acc ignores renaming of unrelated sorts")
{
  Type f = Type::arrows({Type::arrow(C(), B()), Type::arrow(B(), C())}, B());
  Type g = Type::arrows({Type::arrow(Type::base("E"), B()), Type::arrow(B(), Type::base("E"))}, B());
  CHECK(acc(f) == acc(g));
  CHECK(acc(f) == std::set<std::size_t>{1});
}
