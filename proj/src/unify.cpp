#include "osc/unify.hpp"

namespace osc {

bool match_into(const Term& pattern, const Term& value, Binding& binding) {
  if (pattern.is_var()) {
    auto it = binding.find(pattern.symbol());
    if (it != binding.end()) return it->second == value;
    binding.emplace(pattern.symbol(), value);
    return true;
  }
  if (pattern.kind() != value.kind()) return false;
  switch (pattern.kind()) {
    case Term::Kind::Int:
      return pattern.value() == value.value();
    case Term::Kind::Str:
      return pattern.symbol() == value.symbol();
    case Term::Kind::Compound: {
      if (pattern.symbol() != value.symbol()) return false;
      if (pattern.arity() != value.arity()) return false;
      for (std::size_t i = 0; i < pattern.arity(); ++i)
        if (!match_into(pattern.args()[i], value.args()[i], binding)) return false;
      return true;
    }
    case Term::Kind::Var:
      return false;  // unreachable, handled above
  }
  return false;
}

std::optional<Binding> match_pattern(const Term& pattern, const Term& value) {
  Binding b;
  if (match_into(pattern, value, b)) return b;
  return std::nullopt;
}

Term substitute(const Term& t, const Binding& binding) {
  if (t.is_var()) {
    auto it = binding.find(t.symbol());
    return it != binding.end() ? it->second : t;
  }
  if (!t.is_compound() || t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(substitute(a, binding));
  return Term::make(t.symbol(), std::move(args));
}

}  // namespace osc
