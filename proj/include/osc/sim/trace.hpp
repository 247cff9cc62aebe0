#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "osc/term.hpp"

namespace osc::sim {

// Ordered record of everything a network run did, one canonical term per
// line. Traces are the unit of replay comparison and invariant checking.
class Trace {
public:
  void add(Term record) { records_.push_back(std::move(record)); }
  const std::vector<Term>& records() const { return records_; }

  std::string serialize() const;
  static Trace parse(std::string_view text);

private:
  std::vector<Term> records_;
};

}  // namespace osc::sim
