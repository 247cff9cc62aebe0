#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "osc/control_state.hpp"
#include "osc/ruling.hpp"
#include "osc/term.hpp"

namespace testutil {

inline std::string repo_path(const std::string& rel) {
  return std::string(OSC_REPO_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Random ground term generator for round-trip and matching properties.
inline osc::Term random_term(std::mt19937_64& rng, int depth = 0) {
  static const char* atoms[] = {"a", "bb", "ca", "role", "group",
                                "t1", "#tag#", "manager"};
  int pick = static_cast<int>(rng() % (depth >= 3 ? 4 : 6));
  switch (pick) {
    case 0:
      return osc::Term::atom(atoms[rng() % 8]);
    case 1:
      return osc::Term::number(static_cast<long long>(rng() % 2001) - 1000);
    case 2:
      return osc::Term::string(rng() % 2 ? "hi \"x\"\n" : "plain");
    case 3:
      return osc::Term::atom(atoms[rng() % 8]);
    default: {
      std::size_t n = rng() % 3 + 1;
      std::vector<osc::Term> args;
      for (std::size_t i = 0; i < n; ++i) args.push_back(random_term(rng, depth + 1));
      if (pick == 5) return osc::Term::list(std::move(args));
      return osc::Term::make(atoms[rng() % 6], std::move(args));
    }
  }
}

// Independent delta application: the ruling's returned state must equal the
// input state with its add/remove operations applied in order.
inline osc::ControlState apply_deltas(osc::ControlState s,
                                      const std::vector<osc::RulingOp>& ops) {
  for (const osc::RulingOp& op : ops) {
    if (const auto* a = std::get_if<osc::AddStateOp>(&op)) {
      s.attributes.insert(a->attr);
    } else if (const auto* r = std::get_if<osc::RemoveStateOp>(&op)) {
      if (r->by_functor) {
        for (auto it = s.attributes.begin(); it != s.attributes.end();) {
          if (it->is_compound() && it->symbol() == r->what.symbol())
            it = s.attributes.erase(it);
          else
            ++it;
        }
      } else {
        s.attributes.erase(r->what);
      }
    }
  }
  return s;
}

}  // namespace testutil
