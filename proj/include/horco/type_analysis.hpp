#pragma once

#include <set>
#include <string>
#include <vector>

#include "horco/term.hpp"
#include "horco/type.hpp"

namespace horco {

enum class Polarity { Positive, Negative };

constexpr Polarity negate(Polarity p)
{
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

/// Position in a type: a word over {1,2}, 1 = domain, 2 = codomain.
using TypePosition = std::vector<int>;

/// Base-type positions of `t` with polarity `p`. The polarity of a base
/// occurrence is flipped by every domain it sits under; so
/// pos_signed(B, Positive) = {ε} and pos_signed(B, Negative) = ∅.
std::set<TypePosition> pos_signed(const Type& t, Polarity p);

/// Positions of every occurrence of sort `sort` in `t`.
std::set<TypePosition> pos_of_base(const std::string& sort, const Type& t);

bool occurs_only_positively(const std::string& sort, const Type& t);

/// Accessible argument indices (1-based) of `f : T1 -> ... -> Tn -> B`:
/// those i for which B occurs only positively in Ti.
std::set<std::size_t> acc(const std::string& f, const Signature& sig);
std::set<std::size_t> acc(const Type& symbol_type);

} // namespace horco
