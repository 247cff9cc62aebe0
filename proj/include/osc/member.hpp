#pragma once

#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "osc/controller.hpp"
#include "osc/search.hpp"

namespace osc {

// The actor side of a member: builds messages, hands them to its controller,
// and keeps actor-level books (inbox, subscription peers, running searches).
// It never touches the control state directly; everything it learns arrives
// as deliveries.
class Member {
public:
  using SendFn = std::function<void(const AgentName& target, const Term& msg)>;

  Member(AgentName name, SendFn send);

  // Returns the post id chosen for this publication. type_tag is a #name#
  // atom, e.g. "#management#".
  Term publish(const std::string& type_tag, const std::string& body);
  void subscribe_to(const AgentName& publisher);
  void direct_message(const AgentName& target, const std::string& type_tag,
                      const std::string& body);
  void db_request(const Term& query);
  void revoke(const AgentName& target);
  void add_profile_attribute(const Term& attr);
  void update_profile_attribute(const Term& attr);
  void add_filter(const Term& attr);

  Term start_search(const Term& predicate, long long ttl, long long threshold);
  const SearchState* search_result(const Term& qid) const;

  // Routing hook for every delivery the controller makes to this actor.
  void on_deliver(const AgentName& from, const Term& msg);

  const AgentName& name() const { return name_; }
  const std::vector<std::pair<AgentName, Term>>& inbox() const { return inbox_; }
  const std::set<AgentName>& subscribers() const { return subscribers_; }
  const std::set<AgentName>& subscribed_to() const { return subscribed_to_; }
  std::set<AgentName> neighbors() const;

private:
  AgentName name_;
  SendFn send_;
  long long post_seq_ = 0;
  std::vector<std::pair<AgentName, Term>> inbox_;
  std::set<AgentName> subscribers_;
  std::set<AgentName> subscribed_to_;
  SearchAgent search_;
};

}  // namespace osc
