#include <algorithm>

#include "osc/law.hpp"
#include "osc/unify.hpp"

namespace osc {

namespace {

struct BudgetExceeded {};

struct EvalAbort {
  std::string msg;
};

struct Budget {
  std::size_t remaining;
  void spend(std::size_t n = 1) {
    if (n > remaining) throw BudgetExceeded{};
    remaining -= n;
  }
};

class Exec {
public:
  Exec(const Law& law, ControlState state, Budget& budget)
      : state_(std::move(state)), law_(law), budget_(budget) {}

  // ---- guard solving ----

  void solve(const GuardExpr& g, const Binding& in, std::vector<Binding>& out) {
    budget_.spend();
    switch (g.kind) {
      case GuardExpr::Kind::And: {
        std::vector<Binding> cur{in};
        for (const GuardExpr& c : g.children) {
          std::vector<Binding> next;
          for (const Binding& b : cur) solve(c, b, next);
          cur = std::move(next);
          if (cur.empty()) break;
        }
        for (Binding& b : cur) out.push_back(std::move(b));
        return;
      }
      case GuardExpr::Kind::Or:
        for (const GuardExpr& c : g.children) solve(c, in, out);
        return;
      case GuardExpr::Kind::Not: {
        std::vector<Binding> probe;
        solve(g.children.front(), in, probe);
        if (probe.empty()) out.push_back(in);
        return;
      }
      case GuardExpr::Kind::StateMember: {
        Term pat = substitute(g.lhs, in);
        for (const Term& attr : state_.attributes) {
          budget_.spend();
          Binding b = in;
          if (match_into(pat, attr, b)) out.push_back(std::move(b));
        }
        return;
      }
      case GuardExpr::Kind::ArgMember: {
        Term container = substitute(g.rhs, in);
        if (!container.ground() || !container.is_compound()) return;
        Term pat = side_value(g.lhs, g.lhs_functor, in);
        for (const Term& item : container.args()) {
          budget_.spend();
          Binding b = in;
          if (match_into(pat, item, b)) out.push_back(std::move(b));
        }
        return;
      }
      case GuardExpr::Kind::Compare: {
        Term l = side_value(g.lhs, g.lhs_functor, in);
        Term r = side_value(g.rhs, g.rhs_functor, in);
        if (!l.ground() || !r.ground()) return;
        bool holds = false;
        switch (g.cmp) {
          case GuardExpr::Cmp::Eq: holds = l == r; break;
          case GuardExpr::Cmp::Ne: holds = l != r; break;
          default: {
            if (!l.is_int() || !r.is_int()) return;
            long long a = l.value(), b = r.value();
            switch (g.cmp) {
              case GuardExpr::Cmp::Lt: holds = a < b; break;
              case GuardExpr::Cmp::Le: holds = a <= b; break;
              case GuardExpr::Cmp::Gt: holds = a > b; break;
              case GuardExpr::Cmp::Ge: holds = a >= b; break;
              default: break;
            }
          }
        }
        if (holds) out.push_back(in);
        return;
      }
      case GuardExpr::Kind::Controlled: {
        Term v = substitute(g.lhs, in);
        if (!v.ground() || !v.is_compound()) return;
        if (state_.controlled_marks.count(v.symbol())) out.push_back(in);
        return;
      }
    }
  }

  // ---- body execution ----

  void run(const std::vector<Statement>& body, const Binding& binding) {
    for (const Statement& s : body) {
      if (returned_) return;
      step(s, binding);
    }
  }

  ControlState state_;
  std::vector<RulingOp> ops_;

private:
  Term side_value(const Term& t, bool functor_wrapped, const Binding& b) {
    Term v = substitute(t, b);
    if (!functor_wrapped) return v;
    if (!v.is_compound())
      throw EvalAbort{"functor(...) applied to a non-compound value"};
    return Term::atom(v.symbol());
  }

  struct Expansion {
    Term term;
    std::optional<Term> profile;
  };

  // Rule variables are scoped at parse time, so anything still free after
  // substitution is data the event carried (a search predicate, say) and is
  // passed along untouched.
  Expansion expand(const Term& t, const Binding& b) {
    Expansion e{substitute(t, b), std::nullopt};
    e.term = splice_profile(e.term, e.profile);
    return e;
  }

  Term splice_profile(const Term& t, std::optional<Term>& profile) {
    if (t.atom_is("@profile")) {
      if (!profile) profile = law_.profile_term(state_);
      return *profile;
    }
    if (!t.is_compound() || t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(splice_profile(a, profile));
    return Term::make(t.symbol(), std::move(args));
  }

  void apply_add(const Term& attr) {
    if (!attr.is_compound()) throw EvalAbort{"state attributes must be compounds"};
    if (!attr.ground()) throw EvalAbort{"state attributes must be ground"};
    if (law_.single_valued.count(attr.symbol())) {
      for (const Term& old : state_.with_functor(attr.symbol())) {
        if (old == attr) continue;
        state_.attributes.erase(old);
        ops_.push_back(RemoveStateOp{old, false});
      }
    }
    if (state_.attributes.insert(attr).second) ops_.push_back(AddStateOp{attr});
  }

  void step(const Statement& s, const Binding& binding) {
    budget_.spend();
    switch (s.kind) {
      case Statement::Kind::Add:
        apply_add(expand(s.terms[0], binding).term);
        return;
      case Statement::Kind::Remove: {
        Term t = expand(s.terms[0], binding).term;
        if (state_.attributes.erase(t)) ops_.push_back(RemoveStateOp{t, false});
        return;
      }
      case Statement::Kind::RemoveAll: {
        Term t = expand(s.terms[0], binding).term;
        if (!t.is_compound()) throw EvalAbort{"remove_all needs a compound"};
        auto victims = state_.with_functor(t.symbol());
        if (victims.empty()) return;
        for (const Term& v : victims) state_.attributes.erase(v);
        ops_.push_back(RemoveStateOp{Term::atom(t.symbol()), true});
        return;
      }
      case Statement::Kind::PushCapped: {
        Term item = expand(s.terms[0], binding).term;
        if (!item.ground()) throw EvalAbort{"state attributes must be ground"};
        std::vector<Term> items{item};
        for (const Term& old : state_.with_functor(s.push_functor)) {
          if (old.arity() == 1 && old.args()[0].is_list())
            for (const Term& prev : old.args()[0].args())
              if (static_cast<long long>(items.size()) < s.cap)
                items.push_back(prev);
          state_.attributes.erase(old);
          ops_.push_back(RemoveStateOp{old, false});
        }
        if (static_cast<long long>(items.size()) > s.cap) items.resize(s.cap);
        Term attr = Term::make(s.push_functor, {Term::list(std::move(items))});
        state_.attributes.insert(attr);
        ops_.push_back(AddStateOp{attr});
        return;
      }
      case Statement::Kind::Forward: {
        Term src = expand(s.terms[0], binding).term;
        Expansion msg = expand(s.terms[1], binding);
        Term dst = expand(s.terms[2], binding).term;
        ops_.push_back(ForwardOp{src, msg.term, dst, msg.profile});
        return;
      }
      case Statement::Kind::Deliver:
        ops_.push_back(DeliverOp{expand(s.terms[0], binding).term,
                                 expand(s.terms[1], binding).term,
                                 expand(s.terms[2], binding).term});
        return;
      case Statement::Kind::Release:
        ops_.push_back(ReleaseOp{expand(s.terms[0], binding).term,
                                 expand(s.terms[1], binding).term,
                                 expand(s.terms[2], binding).term});
        return;
      case Statement::Kind::Inform:
        ops_.push_back(InformOp{expand(s.terms[0], binding).term, s.audience});
        return;
      case Statement::Kind::Quit:
        ops_.push_back(QuitOp{});
        return;
      case Statement::Kind::Return:
        returned_ = true;
        return;
      case Statement::Kind::If: {
        std::vector<Binding> sols;
        solve(s.guard, binding, sols);
        if (!sols.empty()) run(s.body, sols.front());
        else run(s.else_body, binding);
        return;
      }
      case Statement::Kind::Foreach: {
        std::vector<Binding> sols;
        solve(s.guard, binding, sols);
        std::set<Term> seen;
        for (const Binding& b : sols) {
          if (returned_) return;
          if (!s.distinct_var.empty()) {
            auto it = b.find(s.distinct_var);
            Term key = it != b.end() ? it->second : Term::atom("nil");
            if (!seen.insert(key).second) continue;
          }
          run(s.body, b);
        }
        return;
      }
    }
  }

  const Law& law_;
  Budget& budget_;
  bool returned_ = false;
};

}  // namespace

EvalResult evaluate(const Law& law, const Event& event, const ControlState& state) {
  Term evt = event.to_term();
  Budget budget{kEvalStepBudget};
  try {
    for (const Rule& rule : law.rules) {
      if (rule.event_kind != event.kind) continue;
      budget.spend();
      auto m = match_pattern(rule.event_pattern, evt);
      if (!m) continue;
      Binding binding = *m;
      if (rule.guard) {
        Exec probe(law, state, budget);
        std::vector<Binding> sols;
        probe.solve(*rule.guard, binding, sols);
        if (sols.empty()) continue;
        binding = std::move(sols.front());
      }
      Exec ex(law, state, budget);
      ex.run(rule.body, binding);
      EvalResult r;
      r.state = std::move(ex.state_);
      r.ops = std::move(ex.ops_);
      r.matched = true;
      r.matched_label = rule.label;
      return r;
    }
  } catch (const BudgetExceeded&) {
    EvalResult r;
    r.state = state;
    r.diagnostic = "evaluation step budget exceeded";
    return r;
  } catch (const EvalAbort& a) {
    EvalResult r;
    r.state = state;
    r.diagnostic = a.msg;
    return r;
  }
  EvalResult r;
  r.state = state;
  return r;
}

}  // namespace osc
