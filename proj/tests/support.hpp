#pragma once

#include <string>

#include "horco/syntax.hpp"

namespace horco::test {

inline Trs sys(const std::string& text)
{
  return parse_trs(text);
}

inline Term term(const Trs& t, const std::string& s)
{
  return parse_term(s, t.sig, t.vars);
}

inline Type type(const Trs& t, const std::string& s)
{
  return parse_type(s, t.sig);
}

inline std::string corpus(const std::string& name)
{
  return std::string(HORCO_CORPUS_DIR) + "/" + name;
}

std::string read_file(const std::string& path);

} // namespace horco::test
