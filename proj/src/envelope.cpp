#include "osc/envelope.hpp"

#include <stdexcept>

namespace osc {

Term Envelope::to_term() const {
  std::vector<Term> parts = {Term::make("src", {Term::atom(src)}),
                             Term::make("dst", {Term::atom(dst)}),
                             Term::make("lawhash", {Term::string(law_hash)}),
                             Term::make("msg", {msg})};
  if (profile) parts.push_back(Term::make("profile", {*profile}));
  return Term::make("envelope", parts);
}

std::string Envelope::serialize() const {
  std::string body = to_term().text();
  return std::to_string(body.size()) + ":" + body;
}

Envelope Envelope::from_term(const Term& t) {
  bool shape = t.functor_is("envelope") && (t.arity() == 4 || t.arity() == 5);
  if (shape) {
    const auto& a = t.args();
    auto wraps = [](const Term& part, const char* f) {
      return part.functor_is(f) && part.arity() == 1;
    };
    shape = wraps(a[0], "src") && a[0].args()[0].is_atom() &&
            wraps(a[1], "dst") && a[1].args()[0].is_atom() &&
            wraps(a[2], "lawhash") && a[2].args()[0].is_str() &&
            wraps(a[3], "msg") &&
            (a.size() == 4 || wraps(a[4], "profile"));
  }
  if (!shape) throw std::invalid_argument("not an envelope term: " + t.text());
  Envelope e;
  e.src = t.args()[0].args()[0].symbol();
  e.dst = t.args()[1].args()[0].symbol();
  e.law_hash = t.args()[2].args()[0].symbol();
  e.msg = t.args()[3].args()[0];
  if (t.args().size() == 5) e.profile = t.args()[4].args()[0];
  return e;
}

Envelope Envelope::parse(std::string_view wire) {
  std::size_t colon = wire.find(':');
  if (colon == std::string_view::npos || colon == 0)
    throw std::invalid_argument("envelope frame missing length prefix");
  std::size_t len = 0;
  for (char ch : wire.substr(0, colon)) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("bad envelope length prefix");
    len = len * 10 + static_cast<std::size_t>(ch - '0');
  }
  std::string_view body = wire.substr(colon + 1);
  if (body.size() != len) throw std::invalid_argument("envelope length mismatch");
  return from_term(parse_term(body, TermLimits{64}));
}

bool Envelope::operator==(const Envelope& o) const {
  return src == o.src && dst == o.dst && msg == o.msg && law_hash == o.law_hash &&
         profile == o.profile;
}

}  // namespace osc
