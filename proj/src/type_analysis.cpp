#include "horco/type_analysis.hpp"

#include <algorithm>

namespace horco {

namespace {

void signed_rec(const Type& t, Polarity p, TypePosition& prefix, std::set<TypePosition>& out, Polarity want)
{
  if (t.is_base()) {
    if (p == want) {
      out.insert(prefix);
    }
    return;
  }
  prefix.push_back(1);
  signed_rec(t.dom(), negate(p), prefix, out, want);
  prefix.back() = 2;
  signed_rec(t.cod(), p, prefix, out, want);
  prefix.pop_back();
}

void base_rec(const std::string& sort, const Type& t, TypePosition& prefix, std::set<TypePosition>& out)
{
  if (t.is_base()) {
    if (t.name() == sort) {
      out.insert(prefix);
    }
    return;
  }
  prefix.push_back(1);
  base_rec(sort, t.dom(), prefix, out);
  prefix.back() = 2;
  base_rec(sort, t.cod(), prefix, out);
  prefix.pop_back();
}

} // namespace

std::set<TypePosition> pos_signed(const Type& t, Polarity p)
{
  std::set<TypePosition> out;
  TypePosition prefix;
  signed_rec(t, Polarity::Positive, prefix, out, p);
  return out;
}

std::set<TypePosition> pos_of_base(const std::string& sort, const Type& t)
{
  std::set<TypePosition> out;
  TypePosition prefix;
  base_rec(sort, t, prefix, out);
  return out;
}

bool occurs_only_positively(const std::string& sort, const Type& t)
{
  auto occ = pos_of_base(sort, t);
  auto pos = pos_signed(t, Polarity::Positive);
  return std::includes(pos.begin(), pos.end(), occ.begin(), occ.end());
}

std::set<std::size_t> acc(const Type& symbol_type)
{
  std::set<std::size_t> out;
  auto doms = symbol_type.domains();
  const std::string& b = symbol_type.result().name();
  for (std::size_t i = 0; i < doms.size(); ++i) {
    if (occurs_only_positively(b, doms[i])) {
      out.insert(i + 1);
    }
  }
  return out;
}

std::set<std::size_t> acc(const std::string& f, const Signature& sig)
{
  return acc(sig.symbol_type(f));
}

} // namespace horco
