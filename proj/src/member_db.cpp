#include "osc/member_db.hpp"

#include "osc/unify.hpp"

namespace osc {

namespace {

Term ok(const Term& id) { return Term::make("ok", {id}); }

Term err(const char* why, const Term& what) {
  return Term::make("err", {Term::atom(why), what});
}

bool well_formed_post(const Term& t) {
  return t.functor_is("post") && t.arity() == 3;
}

}  // namespace

MemberDatabase::MemberDatabase(std::string address) : address_(std::move(address)) {}

bool MemberDatabase::address_allowed(const std::string& address,
                                     const std::vector<std::string>& prefixes) {
  for (const auto& p : prefixes) {
    if (address.size() >= p.size() && address.compare(0, p.size(), p) == 0) return true;
  }
  return false;
}

Term MemberDatabase::execute(const Term& query) {
  if (query.functor_is("create") && query.arity() == 1 &&
      well_formed_post(query.args()[0])) {
    const Term& post = query.args()[0];
    const Term& id = post.args()[2];
    if (rows_.count(id)) return err("duplicate", id);
    rows_.emplace(id, post);
    return ok(id);
  }
  if (query.functor_is("update") && query.arity() == 1 &&
      well_formed_post(query.args()[0])) {
    const Term& post = query.args()[0];
    const Term& id = post.args()[2];
    auto it = rows_.find(id);
    if (it == rows_.end()) return err("notFound", id);
    it->second = post;
    return ok(id);
  }
  if (query.functor_is("delete") && query.arity() == 1) {
    const Term& id = query.args()[0];
    if (rows_.erase(id) == 0) return err("notFound", id);
    return ok(id);
  }
  if (query.functor_is("read") && query.arity() == 2) {
    const Term& tag = query.args()[0];
    const Term& pattern = query.args()[1];
    std::vector<Term> matches;
    for (const auto& [id, post] : rows_) {
      if (match_pattern(pattern, post)) matches.push_back(post);
    }
    return Term::make("readResult", {tag, Term::list(matches)});
  }
  return err("malformed", query);
}

std::vector<Term> MemberDatabase::rows() const {
  std::vector<Term> out;
  for (const auto& [id, post] : rows_) out.push_back(post);
  return out;
}

}  // namespace osc
