#include "horco/syntax.hpp"

#include <cctype>
#include <optional>

namespace horco {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line),
      column_(column), message_(message)
{
}

namespace {

enum class Tok { Name, LParen, RParen, Backslash, Colon, Dot, Arrow, Gt, Tilde, Squiggle, LBrack, RBrack, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool name_char(std::string_view s, std::size_t i)
{
  auto c = static_cast<unsigned char>(s[i]);
  if (std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80) {
    return true;
  }
  return c == '-' && !(i + 1 < s.size() && s[i + 1] == '>');
}

std::vector<Token> lex(std::string_view s, std::size_t line, std::size_t col0 = 1)
{
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t col = col0;
  auto push = [&](Tok k, std::size_t n) {
    out.push_back({k, std::string(s.substr(i, n)), line, col});
    i += n;
    col += n;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      push(Tok::Arrow, 2);
      continue;
    }
    if (c == '~' && i + 1 < s.size() && s[i + 1] == '>') {
      push(Tok::Squiggle, 2);
      continue;
    }
    switch (c) {
    case '(':
      push(Tok::LParen, 1);
      continue;
    case ')':
      push(Tok::RParen, 1);
      continue;
    case '\\':
      push(Tok::Backslash, 1);
      continue;
    case ':':
      push(Tok::Colon, 1);
      continue;
    case '.':
      push(Tok::Dot, 1);
      continue;
    case '>':
      push(Tok::Gt, 1);
      continue;
    case '~':
      push(Tok::Tilde, 1);
      continue;
    case '[':
      push(Tok::LBrack, 1);
      continue;
    case ']':
      push(Tok::RBrack, 1);
      continue;
    case ',':
      push(Tok::Comma, 1);
      continue;
    default:
      break;
    }
    if (!name_char(s, i)) {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    std::size_t j = i;
    while (j < s.size() && name_char(s, j)) {
      ++j;
    }
    push(Tok::Name, j - i);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const char* describe(Tok k)
{
  switch (k) {
  case Tok::Name:
    return "a name";
  case Tok::LParen:
    return "'('";
  case Tok::RParen:
    return "')'";
  case Tok::Backslash:
    return "'\\'";
  case Tok::Colon:
    return "':'";
  case Tok::Dot:
    return "'.'";
  case Tok::Arrow:
    return "'->'";
  case Tok::Gt:
    return "'>'";
  case Tok::Tilde:
    return "'~'";
  case Tok::Squiggle:
    return "'~>'";
  case Tok::LBrack:
    return "'['";
  case Tok::RBrack:
    return "']'";
  case Tok::Comma:
    return "','";
  case Tok::End:
    return "end of input";
  }
  return "?";
}

class Parser {
public:
  Parser(std::vector<Token> toks, const Signature& sig, const std::map<std::string, Type>& vars)
      : toks_(std::move(toks)), sig_(sig), vars_(vars)
  {
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.col, msg); }

  const Token& expect(Tok k)
  {
    if (!at(k)) {
      fail(peek(), std::string("expected ") + describe(k) + ", found " +
                       (at(Tok::Name) ? "'" + peek().text + "'" : std::string(describe(peek().kind))));
    }
    return next();
  }

  void expect_end() { expect(Tok::End); }

  Type type()
  {
    Type t = type_atom();
    if (at(Tok::Arrow)) {
      next();
      return Type::arrow(t, type());
    }
    return t;
  }

  Term term()
  {
    if (at(Tok::Backslash)) {
      return lambda();
    }
    Term t = atom();
    while (at(Tok::Name) || at(Tok::LParen) || at(Tok::Backslash)) {
      const Token& at_tok = peek();
      bool last = at(Tok::Backslash);
      Term a = last ? lambda() : atom();
      try {
        t = Term::app(t, a);
      } catch (const TypeError& e) {
        fail(at_tok, e.what());
      }
      if (last) {
        break;
      }
    }
    return t;
  }

  void push_var(const std::string& x, const Type& ty) { extra_[x] = ty; }

private:
  Type type_atom()
  {
    if (at(Tok::LParen)) {
      next();
      Type t = type();
      expect(Tok::RParen);
      return t;
    }
    const Token& n = expect(Tok::Name);
    if (!sig_.has_sort(n.text)) {
      fail(n, "unknown sort '" + n.text + "'");
    }
    return Type::base(n.text);
  }

  Term lambda()
  {
    expect(Tok::Backslash);
    const Token& x = expect(Tok::Name);
    std::string name = x.text;
    expect(Tok::Colon);
    Type ty = type();
    expect(Tok::Dot);
    bound_.emplace_back(name, ty);
    Term body = term();
    bound_.pop_back();
    return Term::lam(name, ty, body);
  }

  Term atom()
  {
    if (at(Tok::LParen)) {
      next();
      Term t = term();
      expect(Tok::RParen);
      return t;
    }
    const Token& n = expect(Tok::Name);
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it) {
      if (it->first == n.text) {
        return Term::var(n.text, it->second);
      }
    }
    if (auto it = extra_.find(n.text); it != extra_.end()) {
      return Term::var(n.text, it->second);
    }
    if (auto it = vars_.find(n.text); it != vars_.end()) {
      return Term::var(n.text, it->second);
    }
    if (sig_.has_symbol(n.text)) {
      return sig_.symbol(n.text);
    }
    fail(n, "unknown name '" + n.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  const std::map<std::string, Type>& vars_;
  std::map<std::string, Type> extra_;
  std::vector<std::pair<std::string, Type>> bound_;
};

void check_name(const Parser& p, const Token& t, const Trs& trs)
{
  if (trs.sig.has_symbol(t.text) || trs.vars.count(t.text)) {
    p.fail(t, "'" + t.text + "' is already declared");
  }
}

} // namespace

Type parse_type(std::string_view text, const Signature& sig)
{
  std::map<std::string, Type> none;
  Parser p(lex(text, 1), sig, none);
  Type t = p.type();
  p.expect_end();
  return t;
}

Term parse_term(std::string_view text, const Signature& sig, const std::map<std::string, Type>& vars)
{
  Parser p(lex(text, 1), sig, vars);
  Term t = p.term();
  p.expect_end();
  return t;
}

Trs parse_trs(std::string_view text)
{
  Trs trs;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string_view::npos) {
      line = line.substr(0, h);
    }
    Parser p(lex(line, line_no), trs.sig, trs.vars);
    if (p.at(Tok::End)) {
      continue;
    }
    const Token kw = p.expect(Tok::Name);
    if (kw.text == "sort") {
      do {
        const Token n = p.expect(Tok::Name);
        if (trs.sig.has_sort(n.text)) {
          p.fail(n, "sort '" + n.text + "' is already declared");
        }
        trs.sig.add_sort(n.text);
      } while (!p.at(Tok::End));
    } else if (kw.text == "symbol" || kw.text == "var") {
      const Token name = p.expect(Tok::Name);
      check_name(p, name, trs);
      p.expect(Tok::Colon);
      Type ty = p.type();
      if (kw.text == "var") {
        p.expect_end();
        trs.vars[name.text] = ty;
        continue;
      }
      trs.sig.add_symbol(name.text, ty);
      trs.params.prec.add_symbol(name.text);
      if (p.at(Tok::Name)) {
        Token st = p.next();
        if (st.text == "status") {
          st = p.expect(Tok::Name);
        }
        auto s = parse_status(st.text);
        if (!s) {
          p.fail(st, "unknown status '" + st.text + "' (expected lex-lr, lex-rl or mul)");
        }
        trs.params.status[name.text] = *s;
        trs.pinned_status.insert(name.text);
      }
      p.expect_end();
    } else if (kw.text == "prec") {
      const Token f = p.expect(Tok::Name);
      const Token op = p.peek();
      if (!p.at(Tok::Gt) && !p.at(Tok::Tilde)) {
        p.fail(op, "expected '>' or '~'");
      }
      p.next();
      const Token g = p.expect(Tok::Name);
      p.expect_end();
      for (const Token* t : {&f, &g}) {
        if (!trs.sig.has_symbol(t->text)) {
          p.fail(*t, "unknown symbol '" + t->text + "'");
        }
      }
      if (op.kind == Tok::Gt) {
        trs.params.prec.add_greater(f.text, g.text);
      } else {
        trs.params.prec.add_equivalent(f.text, g.text);
      }
      auto diags = validate_precedence(trs.params.prec, trs.params.status);
      if (!diags.empty()) {
        p.fail(op, diags.front());
      }
    } else if (kw.text == "rule") {
      Term lhs = p.term();
      p.expect(Tok::Arrow);
      const Token rstart = p.peek();
      Term rhs = p.term();
      p.expect_end();
      if (auto v = rule_violation(lhs, rhs)) {
        p.fail(v->find("head") != std::string::npos ? kw : rstart, *v);
      }
      trs.rules.push_back(Rule{lhs, rhs});
    } else {
      p.fail(kw, "unknown declaration '" + kw.text + "'");
    }
  }
  return trs;
}

std::string print_trs(const Trs& trs)
{
  std::string out;
  if (!trs.sig.sorts().empty()) {
    out += "sort";
    for (const auto& s : trs.sig.sorts()) {
      out += " " + s;
    }
    out += "\n";
  }
  for (const auto& f : trs.params.prec.symbols()) {
    if (!trs.sig.has_symbol(f)) {
      continue;
    }
    out += "symbol " + f + " : " + trs.sig.symbol_type(f).to_string();
    if (trs.pinned_status.count(f)) {
      out += " status " + to_string(trs.params.status_of(f));
    }
    out += "\n";
  }
  for (const auto& [x, ty] : trs.vars) {
    out += "var " + x + " : " + ty.to_string() + "\n";
  }
  for (const auto& [f, g] : trs.params.prec.equivalences()) {
    out += "prec " + f + " ~ " + g + "\n";
  }
  for (const auto& [f, g] : trs.params.prec.edges()) {
    out += "prec " + f + " > " + g + "\n";
  }
  for (const auto& r : trs.rules) {
    out += "rule " + to_string(r.lhs) + " -> " + to_string(r.rhs) + "\n";
  }
  return out;
}

Judgement parse_judgement(std::string_view text, const Signature& sig, const std::map<std::string, Type>& vars)
{
  Parser p(lex(text, 1), sig, vars);
  if (p.at(Tok::LBrack)) {
    p.next();
    while (true) {
      const Token x = p.expect(Tok::Name);
      p.expect(Tok::Colon);
      p.push_var(x.text, p.type());
      if (!p.at(Tok::Comma)) {
        break;
      }
      p.next();
    }
    p.expect(Tok::RBrack);
  }
  const Token kw = p.expect(Tok::Name);
  auto binary = [&](JudgementKind k) {
    p.expect(Tok::Colon);
    Term l = p.term();
    p.expect(Tok::Gt);
    Term r = p.term();
    p.expect_end();
    return Judgement::binary(k, l, r);
  };
  auto root = [&] {
    p.expect(Tok::LBrack);
    Term t = p.term();
    p.expect(Tok::RBrack);
    p.expect(Tok::Colon);
    return t;
  };
  if (kw.text == "rpo") {
    return binary(JudgementKind::Rpo);
  }
  if (kw.text == "rco") {
    return binary(JudgementKind::Rco);
  }
  if (kw.text == "horpo") {
    return binary(JudgementKind::Horpo);
  }
  if (kw.text == "horco") {
    return binary(JudgementKind::Horco);
  }
  if (kw.text == "cc1" || kw.text == "cc") {
    Term r = root();
    Term u = p.term();
    p.expect_end();
    return Judgement::member(kw.text == "cc" ? JudgementKind::Member : JudgementKind::FoMember, r, u);
  }
  if (kw.text == "sq") {
    Term r = root();
    Term a = p.term();
    p.expect(Tok::Gt);
    Term b = p.term();
    p.expect_end();
    return Judgement::approx(r, a, b);
  }
  if (kw.text == "steps") {
    p.expect(Tok::Colon);
    std::vector<Term> path{p.term()};
    while (p.at(Tok::Squiggle)) {
      p.next();
      path.push_back(p.term());
    }
    p.expect_end();
    return Judgement::steps(std::move(path));
  }
  p.fail(kw, "unknown judgement '" + kw.text + "'");
}

} // namespace horco
