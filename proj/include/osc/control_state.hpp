#pragma once

#include <set>
#include <string>

#include "osc/term.hpp"

namespace osc {

// Per-agent state bag. Attributes are ground terms; iteration order is the
// structural term order, which keeps every derived computation deterministic.
struct ControlState {
  std::set<Term> attributes;
  // Functors whose values only rulings may create or change. Populated from
  // the community law when the agent is admitted.
  std::set<std::string> controlled_marks;

  bool contains(const Term& t) const { return attributes.count(t) != 0; }

  bool has_functor(const std::string& f) const {
    for (const Term& a : attributes)
      if (a.is_compound() && a.symbol() == f) return true;
    return false;
  }

  std::vector<Term> with_functor(const std::string& f) const {
    std::vector<Term> out;
    for (const Term& a : attributes)
      if (a.is_compound() && a.symbol() == f) out.push_back(a);
    return out;
  }

  bool operator==(const ControlState& o) const {
    return attributes == o.attributes && controlled_marks == o.controlled_marks;
  }
};

}  // namespace osc
