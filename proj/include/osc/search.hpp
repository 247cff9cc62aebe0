#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "osc/event.hpp"
#include "osc/term.hpp"

namespace osc {

// Actor-side gossip search over the subscription graph.
//
// Query terms: query(Qid, Origin, Pred, Ttl, Hops, Threshold)
//   Qid       q(origin, n), unique per origin
//   Pred      a post pattern matched against local store entries
//   Ttl       forwarding budget left after this hop
//   Hops      distance of the receiver from the origin
//   Threshold fan-out bound per node
// Hit terms: hit(Qid, Member, Hops, [post ids...]), sent straight back to
// the origin rather than along the reverse path.
//
// Every node, the origin included, looks up its own store via a tagged read
// and forwards to its lexicographically smallest neighbours, at most
// Threshold of them, skipping itself and the node it heard the query from.
// A node handles each Qid at most once.
struct SearchHit {
  AgentName member;
  long long hops = 0;
  std::vector<Term> post_ids;
};

struct SearchState {
  Term qid;
  Term predicate;
  long long ttl = 0;
  long long threshold = 0;
  std::map<AgentName, SearchHit> hits;
};

class SearchAgent {
public:
  struct Hooks {
    std::function<void(const AgentName& target, const Term& msg)> send;
    std::function<std::set<AgentName>()> neighbors;
  };

  SearchAgent(AgentName self, Hooks hooks);

  Term initiate(const Term& predicate, long long ttl, long long threshold);
  void on_query(const AgentName& from, const Term& query);
  void on_db_result(const Term& result);  // readResult(Qid, [posts...])
  void on_hit(const Term& hit);
  bool handles_result_tag(const Term& tag) const { return pending_.count(tag) > 0; }

  const SearchState* result(const Term& qid) const;

private:
  struct PendingLookup {
    AgentName origin;
    long long hops = 0;
  };

  void flood(const Term& qid, const AgentName& origin, const Term& pred, long long ttl,
             long long next_hops, long long threshold, const AgentName& skip);

  AgentName self_;
  Hooks hooks_;
  long long counter_ = 0;
  std::set<Term> seen_;
  std::map<Term, PendingLookup> pending_;
  std::map<Term, SearchState> searches_;
};

// Reference reachability: members within ttl subscription hops of the
// origin, the origin included. An unconstrained search must hear from
// exactly the reachable members that hold matching posts.
std::set<AgentName> bfs_reachable(const std::map<AgentName, std::set<AgentName>>& graph,
                                  const AgentName& origin, long long ttl);

}  // namespace osc
