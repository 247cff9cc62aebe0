#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace osc {

// First-order terms: compounds (atoms are zero-arity compounds), integers,
// string literals, and variables. Variables start with an uppercase letter
// or underscore; atoms with a lowercase letter. Functors of the form
// #name# are ordinary atoms used as message type tags.
class Term {
public:
  enum class Kind : std::uint8_t { Compound, Int, Str, Var };

  Term() : kind_(Kind::Compound), sym_("nil") {}

  static Term atom(std::string name);
  static Term make(std::string functor, std::vector<Term> args);
  static Term number(long long value);
  static Term string(std::string value);
  static Term variable(std::string name);
  static Term list(std::vector<Term> items);  // compound with functor "list"

  Kind kind() const { return kind_; }
  // Functor for compounds, name for variables, payload for strings.
  const std::string& symbol() const { return sym_; }
  long long value() const { return num_; }
  const std::vector<Term>& args() const { return args_; }
  std::size_t arity() const { return args_.size(); }

  bool is_compound() const { return kind_ == Kind::Compound; }
  bool is_atom() const { return kind_ == Kind::Compound && args_.empty(); }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_str() const { return kind_ == Kind::Str; }
  bool is_var() const { return kind_ == Kind::Var; }
  bool is_list() const { return kind_ == Kind::Compound && sym_ == "list"; }
  bool functor_is(std::string_view f) const {
    return kind_ == Kind::Compound && sym_ == f;
  }
  bool atom_is(std::string_view name) const { return is_atom() && sym_ == name; }

  bool ground() const;
  std::size_t depth() const;

  // Canonical text form; parsing it back yields an equal term.
  std::string text() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b);

private:
  Kind kind_;
  std::string sym_;
  long long num_ = 0;
  std::vector<Term> args_;
};

int compare(const Term& a, const Term& b);

struct ParseError : std::runtime_error {
  ParseError(std::string msg, int line, int col);
  int line;
  int col;
};

struct TermLimits {
  std::size_t max_depth = 16;
};

Term parse_term(std::string_view text, const TermLimits& limits = {});

}  // namespace osc
