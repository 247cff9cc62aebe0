#include "osc/member.hpp"

#include <stdexcept>

namespace osc {

namespace {

Term tag_atom(const std::string& type_tag) {
  if (type_tag.size() < 3 || type_tag.front() != '#' || type_tag.back() != '#')
    throw std::invalid_argument("message type tag must look like #name#");
  return Term::atom(type_tag);
}

}  // namespace

Member::Member(AgentName name, SendFn send)
    : name_(std::move(name)),
      send_(std::move(send)),
      search_(name_, SearchAgent::Hooks{
                         [this](const AgentName& t, const Term& m) { send_(t, m); },
                         [this]() { return neighbors(); }}) {}

Term Member::publish(const std::string& type_tag, const std::string& body) {
  Term id = Term::make("pid", {Term::atom(name_), Term::number(++post_seq_)});
  Term post = Term::make("post", {tag_atom(type_tag), Term::string(body), id});
  send_(name_, Term::make("publish", {post}));
  return id;
}

void Member::subscribe_to(const AgentName& publisher) {
  send_(publisher, Term::atom("requestSubscribe"));
}

void Member::direct_message(const AgentName& target, const std::string& type_tag,
                            const std::string& body) {
  Term msg = Term::make("msg", {tag_atom(type_tag), Term::string(body)});
  send_(target, Term::make("dm", {msg}));
}

void Member::db_request(const Term& query) {
  send_(name_, Term::make("#db#", {query}));
}

void Member::revoke(const AgentName& target) { send_(target, Term::atom("#revoke#")); }

void Member::add_profile_attribute(const Term& attr) {
  send_(name_, Term::make("addProfile", {attr}));
}

void Member::update_profile_attribute(const Term& attr) {
  send_(name_, Term::make("updateProfile", {attr}));
}

void Member::add_filter(const Term& attr) {
  send_(name_, Term::make("addFilter", {attr}));
}

Term Member::start_search(const Term& predicate, long long ttl, long long threshold) {
  if (ttl < 0 || threshold < 0)
    throw std::invalid_argument("search wants non-negative ttl and threshold");
  return search_.initiate(predicate, ttl, threshold);
}

const SearchState* Member::search_result(const Term& qid) const {
  return search_.result(qid);
}

void Member::on_deliver(const AgentName& from, const Term& msg) {
  inbox_.emplace_back(from, msg);
  if (msg.atom_is("subscribeAllowed")) {
    subscribed_to_.insert(from);
  } else if (msg.functor_is("subscribed") && msg.arity() == 1 &&
             msg.args()[0].is_atom()) {
    subscribers_.insert(msg.args()[0].symbol());
  } else if (msg.functor_is("query") && msg.arity() == 6) {
    search_.on_query(from, msg);
  } else if (msg.functor_is("hit") && msg.arity() == 4) {
    search_.on_hit(msg);
  } else if (msg.functor_is("readResult") && msg.arity() == 2 &&
             search_.handles_result_tag(msg.args()[0])) {
    search_.on_db_result(msg);
  }
}

std::set<AgentName> Member::neighbors() const {
  std::set<AgentName> out = subscribers_;
  out.insert(subscribed_to_.begin(), subscribed_to_.end());
  return out;
}

}  // namespace osc
