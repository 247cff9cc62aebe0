#pragma once

#include <map>
#include <optional>
#include <string>

#include "osc/term.hpp"

namespace osc {

using Binding = std::map<std::string, Term>;

// One-way matching: variables may appear only in the pattern. A repeated
// variable must bind to equal subterms. Returns the bindings on success.
std::optional<Binding> match_pattern(const Term& pattern, const Term& value);

// Like match_pattern but extends an existing binding set (pre-bound
// variables must agree with what they already hold).
bool match_into(const Term& pattern, const Term& value, Binding& binding);

// Replaces bound variables by their values; unbound variables are left as is.
Term substitute(const Term& t, const Binding& binding);

}  // namespace osc
