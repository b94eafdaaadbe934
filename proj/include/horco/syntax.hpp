#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "horco/derivation.hpp"
#include "horco/rewrite.hpp"

namespace horco {

/// A diagnostic with a 1-based source position.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Every sort must be declared in `sig`.
Type parse_type(std::string_view text, const Signature& sig);

/// Names resolve to bound variables, then `vars`, then symbols of `sig`.
Term parse_term(std::string_view text, const Signature& sig, const std::map<std::string, Type>& vars);

/// Reads the line-oriented system format:
///
///   sort   NAME+
///   symbol NAME : TYPE [status (lex-lr|lex-rl|mul)]
///   var    NAME : TYPE
///   prec   NAME (>|~) NAME
///   rule   TERM -> TERM
///
/// Declarations must precede their use. Throws ParseError.
Trs parse_trs(std::string_view text);

/// Inverse of parse_trs up to alpha and whitespace.
std::string print_trs(const Trs& trs);

/// Reads the printed form of a judgement (see to_string(Judgement)).
Judgement parse_judgement(std::string_view text, const Signature& sig, const std::map<std::string, Type>& vars);

} // namespace horco
