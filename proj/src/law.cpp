#include "osc/law.hpp"

#include <sstream>

namespace osc {

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Adopted: return "adopted";
    case EventKind::Certified: return "certified";
    case EventKind::Sent: return "sent";
    case EventKind::Arrived: return "arrived";
    case EventKind::Submitted: return "submitted";
  }
  return "?";
}

Term Event::to_term() const {
  if (kind == EventKind::Adopted || kind == EventKind::Certified)
    return Term::make(event_kind_name(kind), {Term::atom(source), payload});
  return Term::make(event_kind_name(kind),
                    {Term::atom(source), payload, Term::atom(target)});
}

Term op_to_term(const RulingOp& op) {
  struct V {
    Term operator()(const ForwardOp& o) const {
      return Term::make("forward", {o.src, o.msg, o.dst});
    }
    Term operator()(const DeliverOp& o) const {
      return Term::make("deliver", {o.src, o.msg, o.dst});
    }
    Term operator()(const ReleaseOp& o) const {
      return Term::make("release", {o.src, o.msg, o.resource});
    }
    Term operator()(const AddStateOp& o) const {
      return Term::make("add", {o.attr});
    }
    Term operator()(const RemoveStateOp& o) const {
      return Term::make(o.by_functor ? "remove_all" : "remove", {o.what});
    }
    Term operator()(const InformOp& o) const {
      return Term::make("inform",
                        {o.msg, Term::atom(o.audience == InformAudience::Controllers
                                               ? "controllers"
                                               : "offline")});
    }
    Term operator()(const QuitOp&) const { return Term::atom("quit"); }
  };
  return std::visit(V{}, op);
}

bool op_is_quit(const RulingOp& op) { return std::holds_alternative<QuitOp>(op); }

// ------------------------------------------------------- canonical form ----

namespace {

int guard_prec(const GuardExpr& g) {
  switch (g.kind) {
    case GuardExpr::Kind::Or: return 1;
    case GuardExpr::Kind::And: return 2;
    case GuardExpr::Kind::Not: return 3;
    default: return 4;
  }
}

const char* cmp_text(GuardExpr::Cmp c) {
  switch (c) {
    case GuardExpr::Cmp::Eq: return "==";
    case GuardExpr::Cmp::Ne: return "!=";
    case GuardExpr::Cmp::Lt: return "<";
    case GuardExpr::Cmp::Le: return "<=";
    case GuardExpr::Cmp::Gt: return ">";
    case GuardExpr::Cmp::Ge: return ">=";
  }
  return "==";
}

void print_guard(std::ostream& os, const GuardExpr& g, int parent_prec) {
  int p = guard_prec(g);
  bool paren = p < parent_prec;
  if (paren) os << '(';
  switch (g.kind) {
    case GuardExpr::Kind::Or:
    case GuardExpr::Kind::And: {
      const char* sep = g.kind == GuardExpr::Kind::Or ? " or " : " and ";
      for (std::size_t i = 0; i < g.children.size(); ++i) {
        if (i) os << sep;
        print_guard(os, g.children[i], p + 1);
      }
      break;
    }
    case GuardExpr::Kind::Not:
      os << "not ";
      print_guard(os, g.children.front(), 4);
      break;
    case GuardExpr::Kind::StateMember:
      os << g.lhs.text() << " @ CS";
      break;
    case GuardExpr::Kind::ArgMember:
      os << g.lhs.text() << " in " << g.rhs.text();
      break;
    case GuardExpr::Kind::Compare:
      if (g.lhs_functor) os << "functor(" << g.lhs.text() << ")";
      else os << g.lhs.text();
      os << ' ' << cmp_text(g.cmp) << ' ';
      if (g.rhs_functor) os << "functor(" << g.rhs.text() << ")";
      else os << g.rhs.text();
      break;
    case GuardExpr::Kind::Controlled:
      os << "controlled(" << g.lhs.text() << ")";
      break;
  }
  if (paren) os << ')';
}

void print_stmts(std::ostream& os, const std::vector<Statement>& body, int indent);

void print_stmt(std::ostream& os, const Statement& s, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad;
  switch (s.kind) {
    case Statement::Kind::Add:
      os << "add(" << s.terms[0].text() << ");\n";
      return;
    case Statement::Kind::Remove:
      os << "remove(" << s.terms[0].text() << ");\n";
      return;
    case Statement::Kind::RemoveAll:
      os << "remove_all(" << s.terms[0].text() << ");\n";
      return;
    case Statement::Kind::PushCapped:
      os << "push_capped(" << s.push_functor << "," << s.terms[0].text() << ","
         << s.cap << ");\n";
      return;
    case Statement::Kind::Forward:
      os << "forward(" << s.terms[0].text() << "," << s.terms[1].text() << ","
         << s.terms[2].text() << ");\n";
      return;
    case Statement::Kind::Deliver:
      os << "deliver(" << s.terms[0].text() << "," << s.terms[1].text() << ","
         << s.terms[2].text() << ");\n";
      return;
    case Statement::Kind::Release:
      os << "release(" << s.terms[0].text() << "," << s.terms[1].text() << ","
         << s.terms[2].text() << ");\n";
      return;
    case Statement::Kind::Inform:
      os << "inform(" << s.terms[0].text() << ","
         << (s.audience == InformAudience::Controllers ? "controllers" : "offline")
         << ");\n";
      return;
    case Statement::Kind::Quit:
      os << "quit;\n";
      return;
    case Statement::Kind::Return:
      os << "return;\n";
      return;
    case Statement::Kind::If:
      os << "if (";
      print_guard(os, s.guard, 1);
      os << ") {\n";
      print_stmts(os, s.body, indent + 1);
      os << pad << "}";
      if (!s.else_body.empty()) {
        os << " else {\n";
        print_stmts(os, s.else_body, indent + 1);
        os << pad << "}";
      }
      os << "\n";
      return;
    case Statement::Kind::Foreach:
      os << "foreach ";
      if (!s.distinct_var.empty()) os << "distinct(" << s.distinct_var << ") ";
      os << "(";
      print_guard(os, s.guard, 1);
      os << ") {\n";
      print_stmts(os, s.body, indent + 1);
      os << pad << "}\n";
      return;
  }
}

void print_stmts(std::ostream& os, const std::vector<Statement>& body, int indent) {
  for (const Statement& s : body) print_stmt(os, s, indent);
}

void print_decl(std::ostream& os, const char* kw, const std::set<std::string>& names) {
  if (names.empty()) return;
  os << kw << ' ';
  bool first = true;
  for (const std::string& n : names) {
    if (!first) os << ", ";
    os << n;
    first = false;
  }
  os << '\n';
}

}  // namespace

std::string Law::canonical_text() const {
  std::ostringstream os;
  os << "law " << name << '\n';
  print_decl(os, "controlled", controlled_attributes);
  print_decl(os, "single", single_valued);
  print_decl(os, "internal", internal_attributes);
  for (const Rule& r : rules) {
    os << '\n' << r.label << ": UPON " << r.event_pattern.text();
    if (r.guard) {
      os << " :- ";
      print_guard(os, *r.guard, 1);
    }
    os << " {\n";
    print_stmts(os, r.body, 1);
    os << "}\n";
  }
  return os.str();
}

const Digest& Law::hash() const {
  if (hash_.empty()) hash_ = sha256_hex(canonical_text());
  return hash_;
}

Term Law::profile_term(const ControlState& state) const {
  std::vector<Term> attrs;
  for (const Term& a : state.attributes) {
    if (a.is_compound() && internal_attributes.count(a.symbol())) continue;
    attrs.push_back(a);
  }
  return Term::make("profile", std::move(attrs));
}

}  // namespace osc
