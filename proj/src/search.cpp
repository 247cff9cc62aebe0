#include "osc/search.hpp"

#include <deque>

namespace osc {

SearchAgent::SearchAgent(AgentName self, Hooks hooks)
    : self_(std::move(self)), hooks_(std::move(hooks)) {}

Term SearchAgent::initiate(const Term& predicate, long long ttl, long long threshold) {
  Term qid = Term::make("q", {Term::atom(self_), Term::number(++counter_)});
  seen_.insert(qid);
  searches_[qid] = SearchState{qid, predicate, ttl, threshold, {}};
  pending_[qid] = PendingLookup{self_, 0};
  hooks_.send(self_, Term::make("#db#", {Term::make("read", {qid, predicate})}));
  flood(qid, self_, predicate, ttl, 1, threshold, self_);
  return qid;
}

void SearchAgent::on_query(const AgentName& from, const Term& query) {
  if (!query.functor_is("query") || query.arity() != 6) return;
  const Term& qid = query.args()[0];
  const Term& origin = query.args()[1];
  const Term& pred = query.args()[2];
  const Term& ttl = query.args()[3];
  const Term& hops = query.args()[4];
  const Term& threshold = query.args()[5];
  if (!origin.is_atom() || !ttl.is_int() || !hops.is_int() || !threshold.is_int())
    return;
  if (seen_.count(qid)) return;
  seen_.insert(qid);
  pending_[qid] = PendingLookup{origin.symbol(), hops.value()};
  hooks_.send(self_, Term::make("#db#", {Term::make("read", {qid, pred})}));
  if (ttl.value() > 0)
    flood(qid, origin.symbol(), pred, ttl.value(), hops.value() + 1, threshold.value(),
          from);
}

void SearchAgent::flood(const Term& qid, const AgentName& origin, const Term& pred,
                        long long ttl, long long next_hops, long long threshold,
                        const AgentName& skip) {
  if (ttl <= 0 || threshold <= 0) return;
  long long sent = 0;
  for (const AgentName& n : hooks_.neighbors()) {
    if (n == self_ || n == skip) continue;
    if (sent >= threshold) break;
    hooks_.send(n, Term::make("query", {qid, Term::atom(origin), pred,
                                        Term::number(ttl - 1), Term::number(next_hops),
                                        Term::number(threshold)}));
    ++sent;
  }
}

void SearchAgent::on_db_result(const Term& result) {
  if (!result.functor_is("readResult") || result.arity() != 2) return;
  auto it = pending_.find(result.args()[0]);
  if (it == pending_.end()) return;
  PendingLookup lk = it->second;
  const Term qid = it->first;
  pending_.erase(it);

  std::vector<Term> ids;
  if (result.args()[1].is_list()) {
    for (const Term& post : result.args()[1].args()) {
      if (post.functor_is("post") && post.arity() == 3) ids.push_back(post.args()[2]);
    }
  }
  if (ids.empty()) return;
  if (lk.origin == self_) {
    auto s = searches_.find(qid);
    if (s != searches_.end()) s->second.hits[self_] = SearchHit{self_, lk.hops, ids};
  } else {
    hooks_.send(lk.origin, Term::make("hit", {qid, Term::atom(self_),
                                              Term::number(lk.hops), Term::list(ids)}));
  }
}

void SearchAgent::on_hit(const Term& hit) {
  if (!hit.functor_is("hit") || hit.arity() != 4) return;
  auto s = searches_.find(hit.args()[0]);
  if (s == searches_.end()) return;
  const Term& member = hit.args()[1];
  const Term& hops = hit.args()[2];
  if (!member.is_atom() || !hops.is_int() || !hit.args()[3].is_list()) return;
  SearchHit h;
  h.member = member.symbol();
  h.hops = hops.value();
  for (const Term& id : hit.args()[3].args()) h.post_ids.push_back(id);
  s->second.hits[h.member] = std::move(h);
}

const SearchState* SearchAgent::result(const Term& qid) const {
  auto it = searches_.find(qid);
  return it == searches_.end() ? nullptr : &it->second;
}

std::set<AgentName> bfs_reachable(const std::map<AgentName, std::set<AgentName>>& graph,
                                  const AgentName& origin, long long ttl) {
  std::set<AgentName> seen{origin};
  std::deque<std::pair<AgentName, long long>> frontier{{origin, 0}};
  while (!frontier.empty()) {
    auto [node, depth] = frontier.front();
    frontier.pop_front();
    if (depth >= ttl) continue;
    auto it = graph.find(node);
    if (it == graph.end()) continue;
    for (const AgentName& n : it->second) {
      if (seen.insert(n).second) frontier.emplace_back(n, depth + 1);
    }
  }
  return seen;
}

}  // namespace osc
