#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace horco {

/// Raised when a term or type is constructed or combined in an ill-typed way.
class TypeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Simple type: a base sort or an arrow. Immutable, cheap to copy.
class Type {
public:
  Type() = default;

  static Type base(std::string name);
  static Type arrow(Type dom, Type cod);
  /// T1 -> ... -> Tn -> result
  static Type arrows(const std::vector<Type>& doms, Type result);

  bool valid() const { return node_ != nullptr; }
  bool is_base() const;
  bool is_arrow() const { return valid() && !is_base(); }

  /// Sort name; only for base types.
  const std::string& name() const;
  const Type& dom() const;
  const Type& cod() const;

  /// Flattened view T1 -> ... -> Tn -> B with B a base sort.
  std::vector<Type> domains() const;
  Type result() const;
  std::size_t arity() const;

  std::string to_string() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
  friend bool operator<(const Type& a, const Type& b) { return a.to_string() < b.to_string(); }

private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Every base sort occurring in `t`.
void collect_sorts(const Type& t, std::vector<std::string>& out);

} // namespace horco
