#include "osc/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "osc/lexer.hpp"

namespace osc {

ParseError::ParseError(std::string msg, int line_, int col_)
    : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                         std::to_string(col_) + ")"),
      line(line_),
      col(col_) {}

Term Term::atom(std::string name) {
  Term t;
  t.kind_ = Kind::Compound;
  t.sym_ = std::move(name);
  return t;
}

Term Term::make(std::string functor, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::Compound;
  t.sym_ = std::move(functor);
  t.args_ = std::move(args);
  return t;
}

Term Term::number(long long value) {
  Term t;
  t.kind_ = Kind::Int;
  t.sym_.clear();
  t.num_ = value;
  return t;
}

Term Term::string(std::string value) {
  Term t;
  t.kind_ = Kind::Str;
  t.sym_ = std::move(value);
  return t;
}

Term Term::variable(std::string name) {
  Term t;
  t.kind_ = Kind::Var;
  t.sym_ = std::move(name);
  return t;
}

Term Term::list(std::vector<Term> items) { return make("list", std::move(items)); }

bool Term::ground() const {
  if (kind_ == Kind::Var) return false;
  for (const Term& a : args_)
    if (!a.ground()) return false;
  return true;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const Term& a : args_) d = std::max(d, a.depth());
  return d + 1;
}

int compare(const Term& a, const Term& b) {
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::Int:
      if (a.value() != b.value()) return a.value() < b.value() ? -1 : 1;
      return 0;
    case Term::Kind::Str:
    case Term::Kind::Var:
      return a.symbol().compare(b.symbol()) < 0   ? -1
             : a.symbol().compare(b.symbol()) > 0 ? 1
                                                  : 0;
    case Term::Kind::Compound: {
      if (int c = a.symbol().compare(b.symbol()); c != 0) return c < 0 ? -1 : 1;
      if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
      return 0;
    }
  }
  return 0;
}

bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

namespace {

void escape_into(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '\r': os << "\\r"; break;
      default: os << c;
    }
  }
  os << '"';
}

void print_into(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Int:
      os << t.value();
      return;
    case Term::Kind::Str:
      escape_into(os, t.symbol());
      return;
    case Term::Kind::Var:
      os << t.symbol();
      return;
    case Term::Kind::Compound:
      if (t.is_list()) {
        os << '[';
        for (std::size_t i = 0; i < t.arity(); ++i) {
          if (i) os << ',';
          print_into(os, t.args()[i]);
        }
        os << ']';
        return;
      }
      os << t.symbol();
      if (t.arity()) {
        os << '(';
        for (std::size_t i = 0; i < t.arity(); ++i) {
          if (i) os << ',';
          print_into(os, t.args()[i]);
        }
        os << ')';
      }
      return;
  }
}

}  // namespace

std::string Term::text() const {
  std::ostringstream os;
  print_into(os, *this);
  return os.str();
}

// ---------------------------------------------------------------- lexer ----

namespace {

bool ident_start(char c) { return c >= 'a' && c <= 'z'; }
bool var_start(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

Lexer::Lexer(std::string_view src) {
  std::size_t i = 0;
  int line = 1, col = 1;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '#') {
      // Tag atom #name#, otherwise a comment to end of line.
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j])) ++j;
      if (j > i + 1 && j < src.size() && src[j] == '#') {
        Token t{TokenType::Tag, std::string(src.substr(i, j + 1 - i)), 0, line, col};
        tokens_.push_back(std::move(t));
        bump(j + 1 - i);
        continue;
      }
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    if (ident_start(c) || var_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      TokenType ty = ident_start(c) ? TokenType::Ident : TokenType::Var;
      tokens_.push_back({ty, std::string(src.substr(i, j - i)), 0, line, col});
      bump(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      Token t{TokenType::Int, std::string(src.substr(i, j - i)), 0, line, col};
      t.number = std::stoll(t.text);
      tokens_.push_back(std::move(t));
      bump(j - i);
      continue;
    }
    if (c == '"') {
      std::string out;
      std::size_t j = i + 1;
      int sline = line, scol = col;
      bool closed = false;
      while (j < src.size()) {
        char d = src[j];
        if (d == '"') {
          closed = true;
          ++j;
          break;
        }
        if (d == '\\' && j + 1 < src.size()) {
          char e = src[j + 1];
          switch (e) {
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            case 'r': out += '\r'; break;
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            default:
              throw ParseError(std::string("unknown escape \\") + e, sline, scol);
          }
          j += 2;
          continue;
        }
        out += d;
        ++j;
      }
      if (!closed) throw ParseError("unterminated string literal", sline, scol);
      tokens_.push_back({TokenType::Str, out, 0, sline, scol});
      bump(j - i);
      continue;
    }
    // Multi-character punctuation first.
    auto two = src.substr(i, 2);
    if (two == ":-" || two == "==" || two == "!=" || two == "<=" || two == ">=") {
      tokens_.push_back({TokenType::Punct, std::string(two), 0, line, col});
      bump(2);
      continue;
    }
    static const std::string singles = "()[]{},;:@<>";
    if (singles.find(c) != std::string::npos) {
      tokens_.push_back({TokenType::Punct, std::string(1, c), 0, line, col});
      bump(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  tokens_.push_back({TokenType::End, "", 0, line, col});
}

const Token& Lexer::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  if (k >= tokens_.size()) k = tokens_.size() - 1;
  return tokens_[k];
}

Token Lexer::next() {
  Token t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool Lexer::done() const { return tokens_[pos_].type == TokenType::End; }

bool Lexer::accept_punct(std::string_view p) {
  if (peek().punct(p)) {
    next();
    return true;
  }
  return false;
}

bool Lexer::accept_ident(std::string_view name) {
  if (peek().ident(name)) {
    next();
    return true;
  }
  return false;
}

Token Lexer::expect(TokenType t, const std::string& what) {
  if (peek().type != t) fail("expected " + what);
  return next();
}

void Lexer::expect_punct(std::string_view p) {
  if (!accept_punct(p)) fail("expected '" + std::string(p) + "'");
}

void Lexer::fail(const std::string& msg) const {
  const Token& t = peek();
  std::string got = t.type == TokenType::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(msg + ", got " + got, t.line, t.col);
}

// --------------------------------------------------------- term parsing ----

namespace {

class TermReader {
public:
  TermReader(Lexer& lx, const TermLimits& limits) : lx_(lx), limits_(limits) {}

  Term read(std::size_t depth) {
    if (depth > limits_.max_depth) lx_.fail("term nesting exceeds depth limit");
    const Token& t = lx_.peek();
    switch (t.type) {
      case TokenType::Int:
        return Term::number(lx_.next().number);
      case TokenType::Str:
        return Term::string(lx_.next().text);
      case TokenType::Var: {
        std::string name = lx_.next().text;
        if (name == "_") name = lx_.fresh_anon();
        return Term::variable(name);
      }
      case TokenType::Ident:
      case TokenType::Tag: {
        std::string functor = lx_.next().text;
        if (lx_.accept_punct("(")) {
          std::vector<Term> args = read_args(")", depth);
          return Term::make(std::move(functor), std::move(args));
        }
        return Term::atom(std::move(functor));
      }
      case TokenType::Punct:
        if (t.text == "[") {
          lx_.next();
          std::vector<Term> items = read_args("]", depth);
          return Term::list(std::move(items));
        }
        if (t.text == "@") {
          lx_.next();
          if (!lx_.accept_ident("profile")) lx_.fail("expected 'profile' after '@'");
          return Term::atom("@profile");
        }
        break;
      case TokenType::End:
        break;
    }
    lx_.fail("expected a term");
  }

private:
  std::vector<Term> read_args(std::string_view closer, std::size_t depth) {
    std::vector<Term> args;
    if (lx_.accept_punct(closer)) return args;
    for (;;) {
      args.push_back(read(depth + 1));
      if (lx_.accept_punct(closer)) return args;
      lx_.expect_punct(",");
    }
  }

  Lexer& lx_;
  const TermLimits& limits_;
};

}  // namespace

Term parse_term_from(Lexer& lx, const TermLimits& limits) {
  return TermReader(lx, limits).read(1);
}

Term parse_term(std::string_view text, const TermLimits& limits) {
  Lexer lx(text);
  Term t = parse_term_from(lx, limits);
  if (!lx.done()) lx.fail("trailing input after term");
  return t;
}

}  // namespace osc
