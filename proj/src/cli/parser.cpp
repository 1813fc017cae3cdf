#include "keller/cli/parser.hpp"

#include <cctype>

#include "keller/errors.hpp"

namespace keller::cli {

VariableSet VariableSet::standard(std::size_t n) {
  VariableSet v;
  v.dim_ = n;
  for (std::size_t i = 0; i < n; ++i) v.index_["x" + std::to_string(i + 1)] = i;
  if (n <= 2 && n >= 1) v.index_["x"] = 0;
  if (n == 2) v.index_["y"] = 1;
  return v;
}

VariableSet VariableSet::named(std::vector<std::string> names) {
  VariableSet v;
  v.dim_ = names.size();
  for (std::size_t i = 0; i < names.size(); ++i) v.index_[std::move(names[i])] = i;
  return v;
}

long VariableSet::index_of(std::string_view name) const {
  const auto it = index_.find(name);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

namespace {

enum class Tok { Number, Name, Op, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = i;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Name, std::string(s.substr(start, i - start)), start});
    } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      out.push_back({Tok::Op, std::string(1, c), i++});
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

constexpr int kUnaryPrecedence = 3;
constexpr unsigned kMaxExponent = 64;

int binary_precedence(const Token& t) {
  if (t.kind != Tok::Op) return -1;
  switch (t.text[0]) {
    case '+':
    case '-':
      return 1;
    case '*':
    case '/':
      return 2;
    case '^':
      return 4;
  }
  return -1;
}

class Parser {
 public:
  Parser(std::string_view text, const VariableSet& vars) : tokens_(lex(text)), vars_(vars) {}

  Poly parse() {
    if (peek().kind == Tok::End) throw ParseError("empty expression", peek().pos);
    Poly p = expression(0);
    if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return p;
  }

 private:
  const Token& peek() const { return tokens_[cur_]; }
  const Token& next() { return tokens_[cur_++]; }

  Poly expression(int min_prec) {
    Poly lhs = unary();
    for (;;) {
      const Token& op = peek();
      const int prec = binary_precedence(op);
      if (prec < 0 || prec < min_prec) break;
      next();
      const int next_min = op.text[0] == '^' ? prec : prec + 1;
      Poly rhs = expression(next_min);
      lhs = apply(op, std::move(lhs), rhs);
    }
    return lhs;
  }

  Poly unary() {
    if (peek().kind == Tok::Op && (peek().text == "-" || peek().text == "+")) {
      const bool neg = next().text == "-";
      Poly p = expression(kUnaryPrecedence);
      return neg ? -p : p;
    }
    return primary();
  }

  Poly primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number:
        try {
          return Poly::constant(vars_.dim(), parse_rational(t.text));
        } catch (const ParseError&) {
          throw ParseError("malformed number '" + t.text + "'", t.pos);
        }
      case Tok::Name: {
        const long idx = vars_.index_of(t.text);
        if (idx < 0) throw ParseError("unknown variable '" + t.text + "'", t.pos);
        return Poly::variable(vars_.dim(), static_cast<std::size_t>(idx));
      }
      case Tok::LParen: {
        Poly inner = expression(0);
        if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
        next();
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of expression", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  Poly apply(const Token& op, Poly lhs, const Poly& rhs) {
    switch (op.text[0]) {
      case '+':
        return lhs += rhs;
      case '-':
        return lhs -= rhs;
      case '*':
        return lhs * rhs;
      case '/': {
        if (!rhs.is_constant()) throw ParseError("division is only allowed by a constant", op.pos);
        const Rational d = rhs.constant_term();
        if (d == 0) throw ParseError("division by zero", op.pos);
        return lhs *= Rational(1 / d);
      }
      default: {
        if (!rhs.is_constant()) throw ParseError("exponent must be a constant", op.pos);
        const Rational e = rhs.constant_term();
        if (e.get_den() != 1 || e < 0 || e > kMaxExponent) {
          throw ParseError("exponent must be an integer between 0 and " + std::to_string(kMaxExponent), op.pos);
        }
        return lhs.pow(static_cast<unsigned>(e.get_num().get_ui()));
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t cur_ = 0;
  const VariableSet& vars_;
};

}  // namespace

Poly parse_poly(std::string_view text, const VariableSet& vars) { return Parser(text, vars).parse(); }

Poly parse_poly(std::string_view text, std::size_t n) { return parse_poly(text, VariableSet::standard(n)); }

}  // namespace keller::cli
