#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "osc/control_state.hpp"
#include "osc/digest.hpp"
#include "osc/event.hpp"
#include "osc/ruling.hpp"

namespace osc {

// Guard expressions. StateMember and ArgMember are generators: free
// variables on their left side enumerate bindings; the other forms test.
struct GuardExpr {
  enum class Kind { And, Or, Not, StateMember, ArgMember, Compare, Controlled };
  enum class Cmp { Eq, Ne, Lt, Le, Gt, Ge };

  Kind kind = Kind::And;
  std::vector<GuardExpr> children;  // And/Or/Not
  Term lhs, rhs;
  Cmp cmp = Cmp::Eq;
  // functor(...) wrapper on a compare side evaluates to the functor atom.
  bool lhs_functor = false;
  bool rhs_functor = false;
};

struct Statement {
  enum class Kind {
    Add,
    Remove,      // exact term
    RemoveAll,   // every attribute sharing the argument's functor
    PushCapped,  // prepend to a capped single-valued list attribute
    Forward,
    Deliver,
    Release,
    Inform,
    Quit,
    Return,
    If,
    Foreach,
  };

  Kind kind;
  std::vector<Term> terms;  // operation arguments
  GuardExpr guard;          // If/Foreach
  std::vector<Statement> body;       // If-then / Foreach body
  std::vector<Statement> else_body;  // If-else
  std::string push_functor;
  long long cap = 0;
  std::string distinct_var;  // Foreach: skip repeated bindings of this var
  InformAudience audience = InformAudience::Controllers;
};

struct Rule {
  std::string label;
  EventKind event_kind;
  Term event_pattern;
  std::optional<GuardExpr> guard;
  std::vector<Statement> body;
};

struct Law {
  std::string name;
  std::vector<Rule> rules;
  std::set<std::string> controlled_attributes;
  std::set<std::string> single_valued;
  // Excluded from the profile spliced in by @profile.
  std::set<std::string> internal_attributes;

  // Whitespace- and comment-insensitive canonical form; the community hash
  // is the digest of this text.
  std::string canonical_text() const;
  const Digest& hash() const;

  Term profile_term(const ControlState& state) const;

private:
  mutable Digest hash_;
};

struct EvalResult {
  ControlState state;
  std::vector<RulingOp> ops;
  bool matched = false;
  std::string matched_label;
  std::optional<std::string> diagnostic;
};

// Total ruling function: first rule whose pattern matches and whose guard
// holds decides. Pure in (law, event, state); a blown step budget yields the
// input state, no operations and a diagnostic.
inline constexpr std::size_t kEvalStepBudget = 10000;
EvalResult evaluate(const Law& law, const Event& event, const ControlState& state);

}  // namespace osc
