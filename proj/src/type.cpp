#include "horco/type.hpp"

namespace horco {

struct Type::Node {
  std::string name; // empty for arrows
  Type dom;
  Type cod;
};

Type Type::base(std::string name)
{
  if (name.empty()) {
    throw TypeError("empty sort name");
  }
  return Type(std::make_shared<const Node>(Node{std::move(name), {}, {}}));
}

Type Type::arrow(Type dom, Type cod)
{
  if (!dom.valid() || !cod.valid()) {
    throw TypeError("arrow over an empty type");
  }
  return Type(std::make_shared<const Node>(Node{{}, std::move(dom), std::move(cod)}));
}

Type Type::arrows(const std::vector<Type>& doms, Type result)
{
  Type t = std::move(result);
  for (auto it = doms.rbegin(); it != doms.rend(); ++it) {
    t = arrow(*it, t);
  }
  return t;
}

bool Type::is_base() const
{
  return valid() && !node_->name.empty();
}

const std::string& Type::name() const
{
  if (!is_base()) {
    throw TypeError("name() on a non-base type");
  }
  return node_->name;
}

const Type& Type::dom() const
{
  if (!is_arrow()) {
    throw TypeError("dom() on a non-arrow type");
  }
  return node_->dom;
}

const Type& Type::cod() const
{
  if (!is_arrow()) {
    throw TypeError("cod() on a non-arrow type");
  }
  return node_->cod;
}

std::vector<Type> Type::domains() const
{
  std::vector<Type> out;
  const Type* t = this;
  while (t->is_arrow()) {
    out.push_back(t->dom());
    t = &t->cod();
  }
  return out;
}

Type Type::result() const
{
  const Type* t = this;
  while (t->is_arrow()) {
    t = &t->cod();
  }
  return *t;
}

std::size_t Type::arity() const
{
  std::size_t n = 0;
  for (const Type* t = this; t->is_arrow(); t = &t->cod()) {
    ++n;
  }
  return n;
}

std::string Type::to_string() const
{
  if (!valid()) {
    return "<none>";
  }
  if (is_base()) {
    return node_->name;
  }
  std::string d = dom().to_string();
  if (dom().is_arrow()) {
    d = "(" + d + ")";
  }
  return d + "->" + cod().to_string();
}

bool operator==(const Type& a, const Type& b)
{
  if (a.node_ == b.node_) {
    return true;
  }
  if (!a.valid() || !b.valid() || a.is_base() != b.is_base()) {
    return false;
  }
  if (a.is_base()) {
    return a.node_->name == b.node_->name;
  }
  return a.dom() == b.dom() && a.cod() == b.cod();
}

void collect_sorts(const Type& t, std::vector<std::string>& out)
{
  if (t.is_base()) {
    out.push_back(t.name());
  } else if (t.is_arrow()) {
    collect_sorts(t.dom(), out);
    collect_sorts(t.cod(), out);
  }
}

} // namespace horco
