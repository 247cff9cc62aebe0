#include "osc/sim/trace.hpp"

namespace osc::sim {

std::string Trace::serialize() const {
  std::string out;
  for (const Term& r : records_) {
    out += r.text();
    out += '\n';
  }
  return out;
}

Trace Trace::parse(std::string_view text) {
  Trace t;
  std::size_t pos = 0;
  // Trace terms may nest deeper than hand-written ones; be generous.
  TermLimits limits{64};
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    t.add(parse_term(line, limits));
  }
  return t;
}

}  // namespace osc::sim
