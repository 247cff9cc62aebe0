#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "osc/term.hpp"

namespace osc {

// Operations a ruling may mandate. The mediator executes them in order;
// state deltas are also reflected in the ruling's returned state.

struct ForwardOp {
  Term src, msg, dst;
  // Set when the ruling spliced the sender's profile into msg; the envelope
  // carries it as a separate field as well.
  std::optional<Term> attached_profile;
};

struct DeliverOp {
  Term src, msg, dst;
};

struct ReleaseOp {
  Term src, msg, resource;
};

struct AddStateOp {
  Term attr;
};

struct RemoveStateOp {
  Term what;        // exact term, or a functor atom when by_functor
  bool by_functor = false;
};

enum class InformAudience { Controllers, Offline };

struct InformOp {
  Term msg;
  InformAudience audience;
};

struct QuitOp {};

using RulingOp = std::variant<ForwardOp, DeliverOp, ReleaseOp, AddStateOp,
                              RemoveStateOp, InformOp, QuitOp>;

Term op_to_term(const RulingOp& op);
bool op_is_quit(const RulingOp& op);

}  // namespace osc
