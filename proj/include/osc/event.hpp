#pragma once

#include <string>

#include "osc/term.hpp"

namespace osc {

using AgentName = std::string;

enum class EventKind { Adopted, Certified, Sent, Arrived, Submitted };

const char* event_kind_name(EventKind k);

// A regulated occurrence at one agent's mediator. For Sent the source is the
// local agent; for Arrived and Submitted the target is.
struct Event {
  EventKind kind;
  AgentName source;
  AgentName target;
  Term payload;

  // adopted/certified print as kind(source, payload); the rest as
  // kind(source, payload, target).
  Term to_term() const;
};

}  // namespace osc
