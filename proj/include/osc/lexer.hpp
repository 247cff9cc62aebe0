#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "osc/term.hpp"

namespace osc {

// Shared tokenizer for term text, law files, scenario files and traces.
//
// Tokens:
//   Ident  lowercase identifier            alice, cert, db
//   Var    uppercase/underscore identifier X, Attr, _
//   Tag    hash-delimited atom             #management#
//   Int    decimal integer                 42, -7
//   Str    double-quoted string            "hello\n"
//   Punct  ( ) [ ] { } , ; : :- @ == != <= >= < >
//
// A '#' immediately followed by an identifier and a closing '#' is a Tag;
// any other '#' starts a comment running to end of line.
enum class TokenType { Ident, Var, Tag, Int, Str, Punct, End };

struct Token {
  TokenType type = TokenType::End;
  std::string text;
  long long number = 0;
  int line = 1;
  int col = 1;

  bool is(TokenType t) const { return type == t; }
  bool punct(std::string_view p) const {
    return type == TokenType::Punct && text == p;
  }
  bool ident(std::string_view name) const {
    return type == TokenType::Ident && text == name;
  }
};

class Lexer;

// Reads one term from an open token stream (used by the law, scenario and
// trace parsers, which interleave terms with their own syntax).
Term parse_term_from(Lexer& lx, const TermLimits& limits = {});

class Lexer {
public:
  explicit Lexer(std::string_view src);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool done() const;
  // Consume the next token if it matches; returns whether it did.
  bool accept_punct(std::string_view p);
  bool accept_ident(std::string_view name);
  Token expect(TokenType t, const std::string& what);
  void expect_punct(std::string_view p);
  [[noreturn]] void fail(const std::string& msg) const;
  // Fresh name for each anonymous variable '_' seen while this lexer lives.
  std::string fresh_anon() { return "_G" + std::to_string(++anon_); }

private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int anon_ = 0;
};

}  // namespace osc
