#include "osc/law_parser.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "osc/lexer.hpp"

namespace osc {

namespace {

struct KindInfo {
  EventKind kind;
  std::size_t arity;
};

const std::map<std::string, KindInfo>& event_kinds() {
  static const std::map<std::string, KindInfo> kinds = {
      {"adopted", {EventKind::Adopted, 2}},
      {"certified", {EventKind::Certified, 2}},
      {"sent", {EventKind::Sent, 3}},
      {"arrived", {EventKind::Arrived, 3}},
      {"submitted", {EventKind::Submitted, 3}},
  };
  return kinds;
}

void vars_of(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.symbol());
    return;
  }
  for (const Term& a : t.args()) vars_of(a, out);
}

std::set<std::string> vars_of(const Term& t) {
  std::set<std::string> out;
  vars_of(t, out);
  return out;
}

class LawReader {
public:
  explicit LawReader(std::string_view src) : lx_(src) {}

  Law read() {
    Law law;
    if (!lx_.accept_ident("law")) lx_.fail("law file must start with 'law <name>'");
    law.name = lx_.expect(TokenType::Ident, "law name").text;
    for (;;) {
      if (lx_.peek().ident("controlled")) read_decl(law.controlled_attributes);
      else if (lx_.peek().ident("single")) read_decl(law.single_valued);
      else if (lx_.peek().ident("internal")) read_decl(law.internal_attributes);
      else break;
    }
    while (!lx_.done()) law.rules.push_back(read_rule(law.rules.size()));
    std::set<std::string> labels;
    for (const Rule& r : law.rules)
      if (!labels.insert(r.label).second)
        throw ParseError("duplicate rule label '" + r.label + "'", 1, 1);
    for (const Rule& r : law.rules) check_rule(r);
    return law;
  }

private:
  void read_decl(std::set<std::string>& out) {
    lx_.next();  // the keyword
    for (;;) {
      out.insert(lx_.expect(TokenType::Ident, "attribute functor").text);
      if (!lx_.accept_punct(",")) break;
    }
  }

  Rule read_rule(std::size_t index) {
    Rule r;
    if (lx_.peek().is(TokenType::Ident) && lx_.peek(1).punct(":")) {
      r.label = lx_.next().text;
      lx_.next();
    } else {
      r.label = "r" + std::to_string(index + 1);
    }
    const Token& kw = lx_.peek();
    if (!(kw.is(TokenType::Var) && kw.text == "UPON")) lx_.fail("expected UPON");
    lx_.next();
    r.event_pattern = parse_term_from(lx_);
    auto it = r.event_pattern.is_compound()
                  ? event_kinds().find(r.event_pattern.symbol())
                  : event_kinds().end();
    if (it == event_kinds().end())
      lx_.fail("unknown event kind '" +
               (r.event_pattern.is_compound() ? r.event_pattern.symbol() : "?") + "'");
    if (r.event_pattern.arity() != it->second.arity)
      lx_.fail("event '" + it->first + "' takes " +
               std::to_string(it->second.arity) + " arguments");
    r.event_kind = it->second.kind;
    if (lx_.accept_punct(":-")) r.guard = read_guard();
    lx_.expect_punct("{");
    r.body = read_block();
    return r;
  }

  // guard := and-chain ('or' and-chain)*
  GuardExpr read_guard() {
    GuardExpr g = read_and();
    if (!lx_.peek().ident("or")) return g;
    GuardExpr out;
    out.kind = GuardExpr::Kind::Or;
    out.children.push_back(std::move(g));
    while (lx_.accept_ident("or")) out.children.push_back(read_and());
    return out;
  }

  GuardExpr read_and() {
    GuardExpr g = read_unary();
    if (!lx_.peek().ident("and")) return g;
    GuardExpr out;
    out.kind = GuardExpr::Kind::And;
    out.children.push_back(std::move(g));
    while (lx_.accept_ident("and")) out.children.push_back(read_unary());
    return out;
  }

  GuardExpr read_unary() {
    if (lx_.accept_ident("not")) {
      GuardExpr g;
      g.kind = GuardExpr::Kind::Not;
      g.children.push_back(read_unary());
      return g;
    }
    if (lx_.accept_punct("(")) {
      GuardExpr g = read_guard();
      lx_.expect_punct(")");
      return g;
    }
    return read_atom_guard();
  }

  GuardExpr read_atom_guard() {
    GuardExpr g;
    if (lx_.peek().ident("controlled") && lx_.peek(1).punct("(")) {
      lx_.next();
      lx_.next();
      g.kind = GuardExpr::Kind::Controlled;
      g.lhs = parse_term_from(lx_);
      lx_.expect_punct(")");
      return g;
    }
    bool lf = false;
    Term lhs = read_side(lf);
    if (lx_.accept_punct("@")) {
      if (lf) lx_.fail("functor(...) cannot be tested against CS");
      const Token& cs = lx_.peek();
      if (!(cs.is(TokenType::Var) && cs.text == "CS")) lx_.fail("expected CS after '@'");
      lx_.next();
      g.kind = GuardExpr::Kind::StateMember;
      g.lhs = std::move(lhs);
      return g;
    }
    if (lx_.accept_ident("in")) {
      g.kind = GuardExpr::Kind::ArgMember;
      g.lhs = std::move(lhs);
      g.lhs_functor = lf;
      g.rhs = parse_term_from(lx_);
      return g;
    }
    static const std::map<std::string, GuardExpr::Cmp> cmps = {
        {"==", GuardExpr::Cmp::Eq}, {"!=", GuardExpr::Cmp::Ne},
        {"<", GuardExpr::Cmp::Lt},  {"<=", GuardExpr::Cmp::Le},
        {">", GuardExpr::Cmp::Gt},  {">=", GuardExpr::Cmp::Ge},
    };
    const Token& t = lx_.peek();
    auto it = t.is(TokenType::Punct) ? cmps.find(t.text) : cmps.end();
    if (it == cmps.end()) lx_.fail("expected '@ CS', 'in' or a comparison");
    lx_.next();
    g.kind = GuardExpr::Kind::Compare;
    g.cmp = it->second;
    g.lhs = std::move(lhs);
    g.lhs_functor = lf;
    g.rhs = read_side(g.rhs_functor);
    return g;
  }

  Term read_side(bool& functor_wrapped) {
    if (lx_.peek().ident("functor") && lx_.peek(1).punct("(")) {
      lx_.next();
      lx_.next();
      functor_wrapped = true;
      Term t = parse_term_from(lx_);
      lx_.expect_punct(")");
      return t;
    }
    functor_wrapped = false;
    return parse_term_from(lx_);
  }

  std::vector<Statement> read_block() {
    std::vector<Statement> body;
    while (!lx_.accept_punct("}")) body.push_back(read_stmt());
    return body;
  }

  Statement read_stmt() {
    Statement s;
    const Token& head = lx_.peek();
    if (!head.is(TokenType::Ident)) lx_.fail("expected a statement");
    const std::string& w = head.text;
    auto simple = [&](Statement::Kind k, std::size_t nargs) {
      lx_.next();
      s.kind = k;
      lx_.expect_punct("(");
      for (std::size_t i = 0; i < nargs; ++i) {
        if (i) lx_.expect_punct(",");
        s.terms.push_back(parse_term_from(lx_));
      }
      lx_.expect_punct(")");
      lx_.expect_punct(";");
    };
    if (w == "add") simple(Statement::Kind::Add, 1);
    else if (w == "remove") simple(Statement::Kind::Remove, 1);
    else if (w == "remove_all") simple(Statement::Kind::RemoveAll, 1);
    else if (w == "forward") simple(Statement::Kind::Forward, 3);
    else if (w == "deliver") simple(Statement::Kind::Deliver, 3);
    else if (w == "release") simple(Statement::Kind::Release, 3);
    else if (w == "push_capped") {
      lx_.next();
      s.kind = Statement::Kind::PushCapped;
      lx_.expect_punct("(");
      s.push_functor = lx_.expect(TokenType::Ident, "attribute functor").text;
      lx_.expect_punct(",");
      s.terms.push_back(parse_term_from(lx_));
      lx_.expect_punct(",");
      Token n = lx_.expect(TokenType::Int, "capacity");
      if (n.number <= 0) lx_.fail("push_capped capacity must be positive");
      s.cap = n.number;
      lx_.expect_punct(")");
      lx_.expect_punct(";");
    } else if (w == "inform") {
      lx_.next();
      s.kind = Statement::Kind::Inform;
      lx_.expect_punct("(");
      s.terms.push_back(parse_term_from(lx_));
      lx_.expect_punct(",");
      if (lx_.accept_ident("controllers")) s.audience = InformAudience::Controllers;
      else if (lx_.accept_ident("offline")) s.audience = InformAudience::Offline;
      else lx_.fail("inform audience must be 'controllers' or 'offline'");
      lx_.expect_punct(")");
      lx_.expect_punct(";");
    } else if (w == "quit") {
      lx_.next();
      s.kind = Statement::Kind::Quit;
      lx_.expect_punct(";");
    } else if (w == "return") {
      lx_.next();
      s.kind = Statement::Kind::Return;
      lx_.expect_punct(";");
    } else if (w == "if") {
      lx_.next();
      s.kind = Statement::Kind::If;
      lx_.expect_punct("(");
      s.guard = read_guard();
      lx_.expect_punct(")");
      lx_.expect_punct("{");
      s.body = read_block();
      if (lx_.accept_ident("else")) {
        lx_.expect_punct("{");
        s.else_body = read_block();
      }
    } else if (w == "foreach") {
      lx_.next();
      s.kind = Statement::Kind::Foreach;
      if (lx_.accept_ident("distinct")) {
        lx_.expect_punct("(");
        s.distinct_var = lx_.expect(TokenType::Var, "variable").text;
        lx_.expect_punct(")");
      }
      lx_.expect_punct("(");
      s.guard = read_guard();
      lx_.expect_punct(")");
      lx_.expect_punct("{");
      s.body = read_block();
    } else {
      lx_.fail("unknown statement '" + w + "'");
    }
    return s;
  }

  // ---- static binding analysis -------------------------------------------

  void check_rule(const Rule& r) {
    std::set<std::string> bound = vars_of(r.event_pattern);
    if (r.guard) bound = check_guard(*r.guard, bound, r.label);
    check_body(r.body, bound, r.label);
  }

  std::set<std::string> check_guard(const GuardExpr& g, std::set<std::string> bound,
                                    const std::string& label) {
    switch (g.kind) {
      case GuardExpr::Kind::And:
        for (const GuardExpr& c : g.children) bound = check_guard(c, bound, label);
        return bound;
      case GuardExpr::Kind::Or: {
        // Only variables bound on every branch survive the disjunction.
        std::set<std::string> common;
        bool first = true;
        for (const GuardExpr& c : g.children) {
          std::set<std::string> b = check_guard(c, bound, label);
          if (first) {
            common = std::move(b);
            first = false;
          } else {
            std::set<std::string> keep;
            for (const std::string& v : common)
              if (b.count(v)) keep.insert(v);
            common = std::move(keep);
          }
        }
        return common;
      }
      case GuardExpr::Kind::Not:
        check_guard(g.children.front(), bound, label);  // local bindings only
        return bound;
      case GuardExpr::Kind::StateMember:
        for (const std::string& v : vars_of(g.lhs)) bound.insert(v);
        return bound;
      case GuardExpr::Kind::ArgMember:
        require_bound(vars_of(g.rhs), bound, label);
        for (const std::string& v : vars_of(g.lhs)) bound.insert(v);
        return bound;
      case GuardExpr::Kind::Compare:
        require_bound(vars_of(g.lhs), bound, label);
        require_bound(vars_of(g.rhs), bound, label);
        return bound;
      case GuardExpr::Kind::Controlled:
        require_bound(vars_of(g.lhs), bound, label);
        return bound;
    }
    return bound;
  }

  void check_body(const std::vector<Statement>& body, const std::set<std::string>& bound,
                  const std::string& label) {
    for (const Statement& s : body) {
      switch (s.kind) {
        case Statement::Kind::If: {
          std::set<std::string> b = check_guard(s.guard, bound, label);
          check_body(s.body, b, label);
          check_body(s.else_body, bound, label);
          break;
        }
        case Statement::Kind::Foreach: {
          std::set<std::string> b = check_guard(s.guard, bound, label);
          if (!s.distinct_var.empty() && !b.count(s.distinct_var) &&
              !bound.count(s.distinct_var))
            throw ParseError("distinct variable " + s.distinct_var +
                                 " is not bound in rule '" + label + "'",
                             1, 1);
          check_body(s.body, b, label);
          break;
        }
        default:
          for (const Term& t : s.terms) require_bound(vars_of(t), bound, label);
      }
    }
  }

  void require_bound(const std::set<std::string>& vars,
                     const std::set<std::string>& bound, const std::string& label) {
    for (const std::string& v : vars)
      if (!bound.count(v))
        throw ParseError("variable " + v + " is not bound in rule '" + label + "'",
                         1, 1);
  }

  Lexer lx_;
};

}  // namespace

Law parse_law(std::string_view source) { return LawReader(source).read(); }

std::shared_ptr<const Law> load_law_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open law file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::make_shared<const Law>(parse_law(ss.str()));
}

}  // namespace osc
