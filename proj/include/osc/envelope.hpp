#pragma once

#include <optional>
#include <string>

#include "osc/digest.hpp"
#include "osc/event.hpp"
#include "osc/term.hpp"

namespace osc {

// Wire unit exchanged between controllers. Carries the sender's law hash so
// the receiving controller can check that both sides operate under the same
// law before accepting the message.
struct Envelope {
  AgentName src;
  AgentName dst;
  Term msg = Term::atom("none");
  Digest law_hash;
  std::optional<Term> profile;

  Term to_term() const;
  // Wire form: "<byte count>:" followed by the canonical envelope term.
  std::string serialize() const;
  static Envelope from_term(const Term& t);
  static Envelope parse(std::string_view wire);

  bool operator==(const Envelope& o) const;
};

}  // namespace osc
