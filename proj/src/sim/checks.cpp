#include "osc/sim/checks.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "osc/search.hpp"

namespace osc::sim {

namespace {

const Term* unwrap(const Term& rec, std::size_t i, const char* f) {
  if (i >= rec.arity()) return nullptr;
  const Term& t = rec.args()[i];
  if (!t.functor_is(f) || t.arity() != 1) return nullptr;
  return &t.args()[0];
}

bool matched_rule(const Term& verdict, const char* label) {
  return verdict.functor_is("matched") && verdict.arity() == 1 &&
         verdict.args()[0].atom_is(label);
}

// What an agent's control state looked like when a ruling started.
struct EvalView {
  std::set<Term> groups;
  bool manager = false;
  std::vector<Term> filters;                       // inner filter terms
  std::vector<std::pair<Term, std::string>> subs;  // (group term, subscriber)
};

struct EvalInfo {
  AgentName agent;
  Term event;
  std::size_t pos = 0;
  EvalView view;
  bool has_ruling = false;
  Term verdict;
  std::vector<Term> ops;
  std::size_t ruling_pos = 0;
};

struct EnvInfo {
  long long from_eval = -1;
  AgentName src, dst;
  std::string lawhash;
  Term msg;
  std::size_t pos = 0;
};

struct HopInfo {
  bool delivered = false;
  long long eval = -1;
  std::string reason;
  std::size_t pos = 0;
};

struct DeliverInfo {
  long long eval = -1;
  AgentName agent, from;
  Term msg;
  std::size_t pos = 0;
};

struct SearchInfo {
  Term qid;
  AgentName origin;
  long long ttl = 0;
  long long threshold = 0;
  std::map<AgentName, std::set<AgentName>> graph;
  std::size_t pos = 0;
};

struct StateInfo {
  AgentName agent;
  std::set<Term> attrs;
  std::size_t pos = 0;
};

struct Index {
  std::size_t record_count = 0;
  std::map<long long, EvalInfo> evals;
  std::vector<long long> eval_order;  // in record order
  std::map<long long, EnvInfo> envs;
  std::map<long long, std::vector<HopInfo>> hops;
  std::vector<DeliverInfo> delivers;
  std::map<AgentName, long long> community_of;       // accepted adoptions
  std::map<long long, std::string> community_hash;
  std::map<AgentName, std::size_t> quit_pos;
  std::vector<SearchInfo> searches;
  std::vector<StateInfo> states;
  std::vector<std::pair<std::size_t, AgentName>> offline_flushes;
  std::vector<std::size_t> custody_bad;
  std::vector<std::size_t> format_bad;
  std::vector<std::string> format_notes;
};

EvalView snapshot(const std::set<Term>& attrs) {
  EvalView v;
  for (const Term& a : attrs) {
    if (a.functor_is("group") && a.arity() == 1) {
      v.groups.insert(a);
    } else if (a.functor_is("role") && a.arity() == 1 &&
               a.args()[0].atom_is("manager")) {
      v.manager = true;
    } else if (a.functor_is("filter") && a.arity() == 1) {
      v.filters.push_back(a.args()[0]);
    } else if (a.functor_is("subList") && a.arity() == 2 && a.args()[1].is_atom()) {
      v.subs.emplace_back(a.args()[0], a.args()[1].symbol());
    }
  }
  return v;
}

void apply_deltas(std::set<Term>& attrs, const std::vector<Term>& ops) {
  for (const Term& op : ops) {
    if (op.functor_is("add") && op.arity() == 1) {
      attrs.insert(op.args()[0]);
    } else if (op.functor_is("remove") && op.arity() == 1) {
      attrs.erase(op.args()[0]);
    } else if (op.functor_is("remove_all") && op.arity() == 1 &&
               op.args()[0].is_atom()) {
      const std::string& f = op.args()[0].symbol();
      for (auto it = attrs.begin(); it != attrs.end();) {
        if (it->is_compound() && it->symbol() == f)
          it = attrs.erase(it);
        else
          ++it;
      }
    }
  }
}

Index build_index(const Trace& trace) {
  Index ix;
  const auto& recs = trace.records();
  ix.record_count = recs.size();
  std::map<AgentName, std::set<Term>> replay;
  std::map<AgentName, std::set<AgentName>> last_graph;

  auto bad = [&](std::size_t pos, const std::string& why) {
    ix.format_bad.push_back(pos);
    if (ix.format_notes.size() < 5) ix.format_notes.push_back(why);
  };

  for (std::size_t pos = 0; pos < recs.size(); ++pos) {
    const Term& r = recs[pos];
    if (!r.is_compound()) {
      bad(pos, "non-compound record");
      continue;
    }
    const std::string& f = r.symbol();
    if (f == "evaluate" && r.arity() == 3) {
      const Term* agent = unwrap(r, 1, "agent");
      if (!r.args()[0].is_int() || !agent || !agent->is_atom()) {
        bad(pos, "malformed evaluate record");
        continue;
      }
      long long idx = r.args()[0].value();
      EvalInfo info;
      info.agent = agent->symbol();
      info.event = r.args()[2];
      info.pos = pos;
      info.view = snapshot(replay[info.agent]);
      if (!ix.evals.emplace(idx, std::move(info)).second)
        bad(pos, "duplicate ruling index");
      ix.eval_order.push_back(idx);
    } else if (f == "ruling" && r.arity() == 3) {
      if (!r.args()[0].is_int() || !r.args()[2].is_list()) {
        bad(pos, "malformed ruling record");
        continue;
      }
      auto it = ix.evals.find(r.args()[0].value());
      if (it == ix.evals.end()) {
        bad(pos, "ruling without evaluate");
        continue;
      }
      EvalInfo& e = it->second;
      if (e.has_ruling) {
        bad(pos, "second ruling for one evaluate");
        continue;
      }
      e.has_ruling = true;
      e.verdict = r.args()[1];
      e.ops = r.args()[2].args();
      e.ruling_pos = pos;
      apply_deltas(replay[e.agent], e.ops);
    } else if (f == "envelope" && r.arity() == 7) {
      const Term* from = unwrap(r, 1, "from");
      const Term* src = unwrap(r, 2, "src");
      const Term* dst = unwrap(r, 3, "dst");
      const Term* hash = unwrap(r, 4, "lawhash");
      const Term* msg = unwrap(r, 5, "msg");
      if (!r.args()[0].is_int() || !from || !from->is_int() || !src || !src->is_atom() ||
          !dst || !dst->is_atom() || !hash || !hash->is_str() || !msg ||
          !unwrap(r, 6, "profile")) {
        bad(pos, "malformed envelope record");
        continue;
      }
      EnvInfo e;
      e.from_eval = from->value();
      e.src = src->symbol();
      e.dst = dst->symbol();
      e.lawhash = hash->symbol();
      e.msg = *msg;
      e.pos = pos;
      if (!ix.envs.emplace(r.args()[0].value(), std::move(e)).second)
        bad(pos, "duplicate envelope id");
    } else if (f == "hop" && r.arity() == 2) {
      if (!r.args()[0].is_int()) {
        bad(pos, "malformed hop record");
        continue;
      }
      HopInfo h;
      h.pos = pos;
      if (const Term* d = unwrap(r, 1, "delivered"); d && d->is_int()) {
        h.delivered = true;
        h.eval = d->value();
      } else if (const Term* why = unwrap(r, 1, "dropped"); why && why->is_atom()) {
        h.reason = why->symbol();
      } else {
        bad(pos, "malformed hop record");
        continue;
      }
      ix.hops[r.args()[0].value()].push_back(std::move(h));
    } else if (f == "deliver" && r.arity() == 4) {
      const Term* agent = unwrap(r, 1, "agent");
      const Term* from = unwrap(r, 2, "from");
      const Term* msg = unwrap(r, 3, "msg");
      if (!r.args()[0].is_int() || !agent || !agent->is_atom() || !from ||
          !from->is_atom() || !msg) {
        bad(pos, "malformed deliver record");
        continue;
      }
      ix.delivers.push_back(
          {r.args()[0].value(), agent->symbol(), from->symbol(), *msg, pos});
    } else if (f == "adopted" && r.arity() == 4) {
      const Term* agent = unwrap(r, 0, "agent");
      const Term* comm = unwrap(r, 1, "community");
      if (!agent || !agent->is_atom() || !comm || !comm->is_int() ||
          !unwrap(r, 2, "fp")) {
        bad(pos, "malformed adopted record");
        continue;
      }
      if (unwrap(r, 3, "accepted"))
        ix.community_of[agent->symbol()] = comm->value();
      else if (!unwrap(r, 3, "refused"))
        bad(pos, "malformed adopted record");
    } else if (f == "community" && r.arity() == 2) {
      const Term* law = r.args()[1].functor_is("law") && r.args()[1].arity() == 2
                            ? &r.args()[1]
                            : nullptr;
      const Term* hash = law ? unwrap(*law, 1, "hash") : nullptr;
      if (!r.args()[0].is_int() || !hash || !hash->is_str()) {
        bad(pos, "malformed community record");
        continue;
      }
      ix.community_hash[r.args()[0].value()] = hash->symbol();
    } else if (f == "quit" && r.arity() == 2) {
      const Term* agent = unwrap(r, 1, "agent");
      if (!agent || !agent->is_atom()) {
        bad(pos, "malformed quit record");
        continue;
      }
      ix.quit_pos.emplace(agent->symbol(), pos);
    } else if (f == "graph" && r.arity() == 1 && r.args()[0].is_list()) {
      last_graph.clear();
      for (const Term& e : r.args()[0].args()) {
        if (e.functor_is("edge") && e.arity() == 2 && e.args()[0].is_atom() &&
            e.args()[1].is_atom()) {
          last_graph[e.args()[0].symbol()].insert(e.args()[1].symbol());
          last_graph[e.args()[1].symbol()].insert(e.args()[0].symbol());
        }
      }
    } else if (f == "search" && r.arity() == 5) {
      const Term* qid = unwrap(r, 0, "qid");
      const Term* origin = unwrap(r, 1, "origin");
      const Term* ttl = unwrap(r, 2, "ttl");
      const Term* thr = unwrap(r, 3, "threshold");
      if (!qid || !origin || !origin->is_atom() || !ttl || !ttl->is_int() || !thr ||
          !thr->is_int() || !unwrap(r, 4, "pred")) {
        bad(pos, "malformed search record");
        continue;
      }
      ix.searches.push_back(
          {*qid, origin->symbol(), ttl->value(), thr->value(), last_graph, pos});
    } else if (f == "state" && r.arity() == 3) {
      const Term* agent = unwrap(r, 0, "agent");
      const Term* comm = unwrap(r, 1, "community");
      if (!agent || !agent->is_atom() || !comm || !comm->is_int() ||
          !r.args()[2].is_list()) {
        bad(pos, "malformed state record");
        continue;
      }
      StateInfo s;
      s.agent = agent->symbol();
      s.attrs = std::set<Term>(r.args()[2].args().begin(), r.args()[2].args().end());
      s.pos = pos;
      if (replay[s.agent] != s.attrs) ix.custody_bad.push_back(pos);
      ix.states.push_back(std::move(s));
    } else if (f == "offlineFlush" && r.arity() == 3) {
      const Term* agent = unwrap(r, 0, "agent");
      if (!agent || !agent->is_atom()) {
        bad(pos, "malformed offlineFlush record");
        continue;
      }
      ix.offline_flushes.emplace_back(pos, agent->symbol());
    } else if (f == "bootstrap" || f == "drain" || f == "detached" || f == "attached" ||
               f == "blacklisted" || f == "undelivered" || f == "offline" ||
               f == "sendRefused" || f == "dbDropped" || f == "certified") {
      // bookkeeping records, no invariant reads them directly
    } else {
      bad(pos, "unknown record: " + f);
    }
  }
  return ix;
}

void fail(CheckResult& r, std::size_t pos, const std::string& why) {
  if (r.pass) {
    r.pass = false;
    r.detail = why;
  }
  r.offending.push_back(pos);
}

void suite_format(const Index& ix, CheckResult& r) {
  for (std::size_t pos : ix.format_bad) fail(r, pos, "malformed trace record");
  if (!r.pass && !ix.format_notes.empty()) r.detail = ix.format_notes.front();
}

void suite_serial(const Index& ix, CheckResult& r) {
  long long expect = 0;
  std::size_t last_pos = 0;
  for (const auto& [idx, e] : ix.evals) {
    if (idx != expect) fail(r, e.pos, "ruling indices have a gap");
    expect = idx + 1;
    if (!e.has_ruling) fail(r, e.pos, "evaluate without ruling");
    if (e.has_ruling && e.ruling_pos <= e.pos)
      fail(r, e.ruling_pos, "ruling precedes its evaluate");
    if (idx > 0 && e.pos <= last_pos) fail(r, e.pos, "ruling indices out of order");
    last_pos = e.pos;
  }
  // record order must agree with index order
  for (std::size_t i = 1; i < ix.eval_order.size(); ++i) {
    if (ix.eval_order[i] <= ix.eval_order[i - 1]) {
      fail(r, 0, "evaluate records out of order");
      break;
    }
  }
}

void suite_custody(const Index& ix, CheckResult& r) {
  for (std::size_t pos : ix.custody_bad)
    fail(r, pos, "state snapshot differs from replayed ruling deltas");
}

void suite_conservation(const Index& ix, CheckResult& r) {
  for (const auto& [id, env] : ix.envs) {
    auto it = ix.hops.find(id);
    std::size_t n = it == ix.hops.end() ? 0 : it->second.size();
    if (n == 0) fail(r, env.pos, "envelope never resolved by a hop");
    if (n > 1) fail(r, it->second[1].pos, "envelope resolved twice");
  }
  for (const auto& [id, hs] : ix.hops) {
    if (!ix.envs.count(id))
      fail(r, hs.front().pos, "hop references an unknown envelope");
  }
}

void suite_dual_mediation(const Index& ix, CheckResult& r) {
  for (const auto& [id, hs] : ix.hops) {
    for (const HopInfo& h : hs) {
      if (!h.delivered) continue;
      auto ev = ix.envs.find(id);
      if (ev == ix.envs.end()) continue;  // conservation flags it
      const EnvInfo& env = ev->second;
      auto sender = ix.evals.find(env.from_eval);
      if (sender == ix.evals.end() || sender->second.agent != env.src) {
        fail(r, env.pos, "envelope lacks a sender-side ruling");
        continue;
      }
      auto receiver = ix.evals.find(h.eval);
      if (receiver == ix.evals.end() || receiver->second.agent != env.dst) {
        fail(r, h.pos, "delivered envelope lacks a receiver-side ruling");
        continue;
      }
      Term expected = Term::make(
          "arrived", {Term::atom(env.src), env.msg, Term::atom(env.dst)});
      if (receiver->second.event != expected)
        fail(r, h.pos, "receiver ruling saw a different message");
      if (sender->second.pos >= receiver->second.pos)
        fail(r, h.pos, "receiver ruling precedes sender ruling");
    }
  }
}

void suite_trust(const Index& ix, CheckResult& r) {
  for (const auto& [id, hs] : ix.hops) {
    for (const HopInfo& h : hs) {
      if (!h.delivered) continue;
      auto ev = ix.envs.find(id);
      if (ev == ix.envs.end()) continue;
      const EnvInfo& env = ev->second;
      auto comm = ix.community_of.find(env.dst);
      if (comm == ix.community_of.end()) {
        fail(r, h.pos, "delivery to an agent that was never admitted");
        continue;
      }
      auto hash = ix.community_hash.find(comm->second);
      if (hash == ix.community_hash.end() || env.lawhash != hash->second)
        fail(r, h.pos, "delivered envelope does not carry the community law hash");
    }
  }
}

void suite_revocation(const Index& ix, CheckResult& r) {
  for (const auto& [agent, qpos] : ix.quit_pos) {
    for (const auto& [id, env] : ix.envs) {
      if (env.src == agent && env.pos > qpos)
        fail(r, env.pos, "quit agent sourced an envelope");
    }
    for (const DeliverInfo& d : ix.delivers) {
      if (d.agent == agent && d.pos > qpos)
        fail(r, d.pos, "quit agent received a delivery");
    }
    for (const auto& [pos, a] : ix.offline_flushes) {
      if (a == agent && pos > qpos)
        fail(r, pos, "quit agent received a flushed notice");
    }
  }
}

void suite_group_isolation(const Index& ix, CheckResult& r) {
  for (const DeliverInfo& d : ix.delivers) {
    auto it = ix.evals.find(d.eval);
    if (it == ix.evals.end()) continue;
    const EvalInfo& e = it->second;
    if (!e.event.functor_is("arrived") || e.event.arity() != 3) continue;
    const Term& payload = e.event.args()[1];
    if (!payload.functor_is("dm") || payload.arity() != 2) continue;
    const Term& prof = payload.args()[1];
    bool shared = false;
    for (const Term& g : prof.args())
      if (g.functor_is("group") && e.view.groups.count(g)) shared = true;
    if (!shared)
      fail(r, d.pos, "direct message delivered without a shared group");
  }
}

void suite_management_gating(const Index& ix, CheckResult& r) {
  for (const auto& [id, env] : ix.envs) {
    if (!env.msg.functor_is("post") || env.msg.arity() != 3) continue;
    if (!env.msg.args()[0].atom_is("#management#")) continue;
    auto it = ix.evals.find(env.from_eval);
    if (it == ix.evals.end() || !it->second.view.manager)
      fail(r, env.pos, "management post from a non-manager");
  }
}

void suite_filter_soundness(const Index& ix, CheckResult& r) {
  for (const auto& [idx, e] : ix.evals) {
    if (!e.event.functor_is("arrived") || e.event.arity() != 3) continue;
    const Term& payload = e.event.args()[1];
    if (!payload.functor_is("requestSubscribe") || payload.arity() != 1) continue;
    bool granted = false;
    for (const Term& op : e.ops)
      if (op.functor_is("add") && op.arity() == 1 &&
          op.args()[0].functor_is("subList"))
        granted = true;
    if (!granted) continue;
    const Term& prof = payload.args()[0];
    for (const Term& filt : e.view.filters) {
      for (const Term& attr : prof.args()) {
        if (attr == filt)
          fail(r, e.ruling_pos, "subscription granted despite a matching filter");
      }
    }
  }
}

void suite_fanout(const Index& ix, CheckResult& r) {
  for (const auto& [idx, e] : ix.evals) {
    if (!e.has_ruling) continue;
    if (!matched_rule(e.verdict, "publishPost")) continue;
    if (e.ops.empty()) continue;  // suppressed publish, nothing mandated
    std::set<std::string> expected;
    for (const auto& [group, subscriber] : e.view.subs) {
      if (e.view.groups.count(Term::make("group", {group})))
        expected.insert(subscriber);
    }
    std::set<std::string> actual;
    for (const Term& op : e.ops) {
      if (op.functor_is("forward") && op.arity() == 3 &&
          op.args()[1].functor_is("post") && op.args()[2].is_atom())
        actual.insert(op.args()[2].symbol());
    }
    if (actual != expected)
      fail(r, e.ruling_pos, "publish fan-out differs from the subscribed peers");
  }
}

void suite_lastten(const Index& ix, CheckResult& r) {
  // Publication history per agent, in ruling order.
  std::map<AgentName, std::vector<std::pair<std::size_t, Term>>> hist;
  for (const auto& [idx, e] : ix.evals) {
    if (!e.has_ruling) continue;
    if (!matched_rule(e.verdict, "publishPost")) continue;
    bool accepted = false;
    for (const Term& op : e.ops)
      if (op.functor_is("add") && op.arity() == 1 &&
          op.args()[0].functor_is("lastTenPosts"))
        accepted = true;
    if (!accepted) continue;
    const Term& payload = e.event.args()[1];  // publish(post(T, B, Id))
    if (payload.functor_is("publish") && payload.arity() == 1 &&
        payload.args()[0].arity() == 3)
      hist[e.agent].emplace_back(e.ruling_pos, payload.args()[0].args()[2]);
  }
  for (const StateInfo& s : ix.states) {
    std::vector<Term> expect;  // newest first
    auto it = hist.find(s.agent);
    if (it != hist.end()) {
      for (auto rit = it->second.rbegin();
           rit != it->second.rend() && expect.size() < 10; ++rit) {
        if (rit->first < s.pos) expect.push_back(rit->second);
      }
    }
    std::optional<Term> stored;
    for (const Term& a : s.attrs)
      if (a.functor_is("lastTenPosts") && a.arity() == 1 && a.args()[0].is_list())
        stored = a.args()[0];
    if (expect.empty()) {
      if (stored && !stored->args().empty())
        fail(r, s.pos, "recent-post list present without accepted publishes");
      continue;
    }
    if (!stored || stored->args() != expect)
      fail(r, s.pos, "recent-post list disagrees with the publication history");
  }
}

void suite_search_bound(const Index& ix, CheckResult& r) {
  struct QueryEnv {
    long long id;
    const EnvInfo* env;
    long long ttl, hops;
    Term origin;
  };
  std::map<Term, std::vector<QueryEnv>> by_qid;
  for (const auto& [id, env] : ix.envs) {
    if (!env.msg.functor_is("query") || env.msg.arity() != 6) continue;
    const auto& a = env.msg.args();
    if (!a[3].is_int() || !a[4].is_int()) continue;
    by_qid[a[0]].push_back({id, &env, a[3].value(), a[4].value(), a[1]});
  }

  for (const SearchInfo& s : ix.searches) {
    // Contributing members, from hits delivered at the origin plus the
    // origin's own non-empty local lookup.
    std::set<AgentName> contributors;
    for (const DeliverInfo& d : ix.delivers) {
      if (d.agent != s.origin) continue;
      if (d.msg.functor_is("hit") && d.msg.arity() == 4 && d.msg.args()[0] == s.qid &&
          d.msg.args()[1].is_atom())
        contributors.insert(d.msg.args()[1].symbol());
      if (d.msg.functor_is("readResult") && d.msg.arity() == 2 &&
          d.msg.args()[0] == s.qid && d.msg.args()[1].is_list() &&
          !d.msg.args()[1].args().empty())
        contributors.insert(s.origin);
    }
    std::set<AgentName> reachable = bfs_reachable(s.graph, s.origin, s.ttl);
    for (const AgentName& c : contributors) {
      if (!reachable.count(c))
        fail(r, s.pos, "hit from a member beyond the ttl horizon");
    }

    auto qs = by_qid.find(s.qid);
    if (qs == by_qid.end()) continue;
    // Group this query's envelopes by forwarding controller. One fan-out per
    // node means every copy a node emits sits in the same ttl/hop layer;
    // handling a qid twice would emit copies with different remaining budgets.
    std::map<AgentName, std::vector<const QueryEnv*>> by_src;
    for (const QueryEnv& q : qs->second) by_src[q.env->src].push_back(&q);
    for (const auto& [src, list] : by_src) {
      std::set<AgentName> dsts;
      for (const QueryEnv* q : list) {
        if (!dsts.insert(q->env->dst).second)
          fail(r, q->env->pos, "query forwarded twice to one neighbour");
        if (q->ttl < 0 || q->ttl >= s.ttl)
          fail(r, q->env->pos, "query ttl outside the initiated budget");
        if (q->ttl != list.front()->ttl || q->hops != list.front()->hops)
          fail(r, q->env->pos, "one node forwarded a query in two layers");
      }
      if (static_cast<long long>(list.size()) > s.threshold)
        fail(r, list.front()->env->pos, "query fan-out above the threshold");
      if (src == s.origin) {
        for (const QueryEnv* q : list) {
          if (q->ttl != s.ttl - 1 || q->hops != 1)
            fail(r, q->env->pos, "initiator forward with wrong ttl or hop count");
        }
      } else {
        // Some delivered copy must justify the forwarded budget.
        for (const QueryEnv* q : list) {
          bool justified = false;
          for (const QueryEnv& in : qs->second) {
            if (in.env->dst != src) continue;
            auto hop = ix.hops.find(in.id);
            bool delivered = hop != ix.hops.end() && !hop->second.empty() &&
                             hop->second.front().delivered;
            if (delivered && in.ttl == q->ttl + 1 && in.hops == q->hops - 1)
              justified = true;
          }
          if (!justified)
            fail(r, q->env->pos, "forwarded query has no matching incoming copy");
        }
      }
    }
  }
}

using SuiteFn = void (*)(const Index&, CheckResult&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"format", suite_format},
      {"serial", suite_serial},
      {"custody", suite_custody},
      {"conservation", suite_conservation},
      {"dual_mediation", suite_dual_mediation},
      {"trust", suite_trust},
      {"revocation", suite_revocation},
      {"group_isolation", suite_group_isolation},
      {"management_gating", suite_management_gating},
      {"filter_soundness", suite_filter_soundness},
      {"fanout", suite_fanout},
      {"lastten", suite_lastten},
      {"search_bound", suite_search_bound},
  };
  return table;
}

}  // namespace

std::vector<std::string> check_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : suite_table()) names.push_back(name);
  return names;
}

std::vector<CheckResult> check_trace(const Trace& trace,
                                     const std::vector<std::string>& suites) {
  Index ix = build_index(trace);
  std::vector<CheckResult> out;
  for (const auto& [name, fn] : suite_table()) {
    if (!suites.empty() &&
        std::find(suites.begin(), suites.end(), name) == suites.end())
      continue;
    CheckResult r;
    r.name = name;
    fn(ix, r);
    out.push_back(std::move(r));
  }
  for (const std::string& want : suites) {
    bool known = false;
    for (const auto& [name, fn] : suite_table()) known = known || name == want;
    if (!known) out.push_back({want, false, "unknown suite", {}});
  }
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.pass) return false;
  }
  return !results.empty();
}

}  // namespace osc::sim
