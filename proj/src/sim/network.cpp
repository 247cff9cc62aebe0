#include "osc/sim/network.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <stdexcept>

namespace osc::sim {

namespace {

Term num(long long v) { return Term::number(v); }

Term wrap(const char* f, Term inner) { return Term::make(f, {std::move(inner)}); }

Term agent_of(const AgentName& a) { return wrap("agent", Term::atom(a)); }

Term ruling_verdict(const EvalResult& r) {
  if (r.diagnostic) return wrap("diag", Term::string(*r.diagnostic));
  if (r.matched) return wrap("matched", Term::atom(r.matched_label));
  return Term::atom("unmatched");
}

Term ruling_ops(const EvalResult& r) {
  std::vector<Term> ops;
  for (const RulingOp& op : r.ops) ops.push_back(op_to_term(op));
  return Term::list(ops);
}

}  // namespace

SimNetwork::SimNetwork(NetConfig cfg, std::vector<std::shared_ptr<const Law>> laws)
    : cfg_(std::move(cfg)),
      rng_(cfg_.seed),
      laws_(std::move(laws)),
      ca_(cfg_.ca_key),
      pool_(cfg_.capacity, ControllerConfig{cfg_.ca_key, cfg_.db_prefixes}) {
  if (laws_.empty()) throw std::invalid_argument("network needs at least one law");
  if (cfg_.transport == Transport::Socket) {
    if (socketpair(AF_UNIX, SOCK_SEQPACKET, 0, sock_) != 0)
      throw std::runtime_error("socketpair failed");
  }
  const char* transport = cfg_.transport == Transport::Socket ? "socket" : "sim";
  trace_.add(Term::make(
      "bootstrap", {wrap("seed", num(static_cast<long long>(cfg_.seed))),
                    wrap("capacity", num(static_cast<long long>(cfg_.capacity))),
                    wrap("transport", Term::atom(transport))}));
  for (std::size_t k = 0; k < laws_.size(); ++k) {
    trace_.add(Term::make(
        "community",
        {num(static_cast<long long>(k)),
         Term::make("law", {Term::atom(laws_[k]->name),
                            wrap("hash", Term::string(laws_[k]->hash()))})}));
  }
}

SimNetwork::~SimNetwork() {
  if (sock_[0] >= 0) close(sock_[0]);
  if (sock_[1] >= 0) close(sock_[1]);
}

SimNetwork::AdoptOutcome SimNetwork::adopt(const std::string& requested,
                                           const std::vector<Term>& attrs,
                                           std::size_t community,
                                           const std::string& db_address) {
  AgentName name = secretary_.register_name(requested);
  Certificate cert =
      ca_.issue(name, std::set<Term>(attrs.begin(), attrs.end()));
  certs_.emplace(name, cert);
  std::string addr = db_address.empty() ? "intra://members/" + name : db_address;
  return admit(name, cert, community, addr);
}

SimNetwork::AdoptOutcome SimNetwork::readopt_certificate(const Certificate& cert,
                                                         std::size_t community) {
  AgentName name = secretary_.register_name(cert.subject);
  return admit(name, cert, community, "intra://members/" + name);
}

SimNetwork::AdoptOutcome SimNetwork::admit(const AgentName& name,
                                           const Certificate& cert,
                                           std::size_t community,
                                           const std::string& db_address) {
  AdoptOutcome out;
  out.name = name;
  Term fp = wrap("fp", Term::string(cert.fingerprint));
  Term comm = wrap("community", num(static_cast<long long>(community)));

  Controller* c = pool_.allocate();
  if (!c) {
    out.reason = "controller pool exhausted";
    trace_.add(Term::make("adopted", {agent_of(name), comm, fp,
                                      wrap("refused", Term::string(out.reason))}));
    return out;
  }
  auto d = c->adopt(name, laws_.at(community), cert, db_address);
  if (!d.accepted) {
    if (d.effects.eval) apply_effects(name, std::move(d.effects));
    pool_.release(c->id());
    out.reason = d.reason;
    trace_.add(Term::make("adopted", {agent_of(name), comm, fp,
                                      wrap("refused", Term::string(out.reason))}));
    return out;
  }

  secretary_.set_locator(name, c->id());
  ctrl_[name] = c;
  community_of_[name] = community;
  members_[name] = std::make_unique<Member>(
      name, [this, name](const AgentName& t, const Term& m) { actor_send(name, t, m); });
  auto idx = apply_effects(name, std::move(d.effects));
  trace_.add(Term::make(
      "adopted", {agent_of(name), comm, fp,
                  wrap("accepted", num(static_cast<long long>(idx.value_or(0))))}));
  out.accepted = true;
  return out;
}

void SimNetwork::certify(const AgentName& agent, const std::vector<Term>& attrs) {
  auto it = ctrl_.find(agent);
  if (it == ctrl_.end() || !secretary_.is_live(agent)) {
    trace_.add(Term::make("certified", {agent_of(agent),
                                        wrap("refused", Term::string("agent not live"))}));
    return;
  }
  Certificate cert = ca_.issue(agent, std::set<Term>(attrs.begin(), attrs.end()));
  Effects e = it->second->certify(cert);
  if (e.refusal) {
    trace_.add(Term::make("certified", {agent_of(agent),
                                        wrap("refused", Term::string(*e.refusal))}));
    return;
  }
  auto idx = apply_effects(agent, std::move(e));
  trace_.add(Term::make(
      "certified", {agent_of(agent),
                    wrap("accepted", num(static_cast<long long>(idx.value_or(0))))}));
}

Term SimNetwork::start_search(const AgentName& agent, const Term& predicate,
                              long long ttl, long long threshold) {
  std::vector<Term> edges;
  for (const auto& [a, peers] : subscription_graph()) {
    for (const AgentName& b : peers) {
      if (a < b) edges.push_back(Term::make("edge", {Term::atom(a), Term::atom(b)}));
    }
  }
  trace_.add(wrap("graph", Term::list(edges)));
  Term qid = members_.at(agent)->start_search(predicate, ttl, threshold);
  trace_.add(Term::make("search", {wrap("qid", qid), wrap("origin", Term::atom(agent)),
                                   wrap("ttl", num(ttl)),
                                   wrap("threshold", num(threshold)),
                                   wrap("pred", predicate)}));
  return qid;
}

void SimNetwork::detach_actor(const AgentName& agent) {
  auto it = ctrl_.find(agent);
  if (it == ctrl_.end()) return;
  it->second->detach();
  trace_.add(wrap("detached", agent_of(agent)));
}

void SimNetwork::attach_actor(const AgentName& agent) {
  auto it = ctrl_.find(agent);
  if (it == ctrl_.end()) return;
  auto flushed = it->second->attach();
  trace_.add(wrap("attached", agent_of(agent)));
  for (const auto& f : flushed) {
    trace_.add(Term::make("offlineFlush", {agent_of(agent),
                                           wrap("from", Term::atom(f.from)),
                                           wrap("msg", f.msg)}));
    members_.at(agent)->on_deliver(f.from, f.msg);
  }
}

void SimNetwork::actor_send(const AgentName& agent, const AgentName& target,
                            const Term& msg) {
  auto it = ctrl_.find(agent);
  if (it == ctrl_.end()) return;
  Effects e = it->second->actor_send(target, msg);
  if (e.refusal) {
    trace_.add(Term::make("sendRefused", {agent_of(agent), wrap("msg", msg),
                                          wrap("reason", Term::string(*e.refusal))}));
    return;
  }
  apply_effects(agent, std::move(e));
}

std::optional<std::size_t> SimNetwork::apply_effects(const AgentName& agent,
                                                     Effects e) {
  std::optional<std::size_t> idx;
  if (e.eval) {
    idx = eval_idx_++;
    trace_.add(Term::make("evaluate", {num(static_cast<long long>(*idx)),
                                       agent_of(agent), e.eval->event.to_term()}));
    trace_.add(Term::make("ruling", {num(static_cast<long long>(*idx)),
                                     ruling_verdict(e.eval->result),
                                     ruling_ops(e.eval->result)}));
  }
  for (Envelope& env : e.envelopes) {
    std::size_t id = env_idx_++;
    trace_.add(Term::make(
        "envelope",
        {num(static_cast<long long>(id)),
         wrap("from", num(static_cast<long long>(idx.value_or(0)))),
         wrap("src", Term::atom(env.src)), wrap("dst", Term::atom(env.dst)),
         wrap("lawhash", Term::string(env.law_hash)), wrap("msg", env.msg),
         wrap("profile", env.profile ? *env.profile : Term::atom("none"))}));
    wire_.emplace_back(id, std::move(env));
  }
  for (const auto& d : e.deliveries) {
    trace_.add(Term::make("deliver", {num(static_cast<long long>(idx.value_or(0))),
                                      agent_of(agent), wrap("from", Term::atom(d.from)),
                                      wrap("msg", d.msg)}));
    auto m = members_.find(agent);
    if (m != members_.end()) m->second->on_deliver(d.from, d.msg);
  }
  for (const auto& d : e.undeliverable) {
    trace_.add(Term::make("undelivered", {num(static_cast<long long>(idx.value_or(0))),
                                          agent_of(agent), wrap("msg", d.msg)}));
  }
  for (const auto& d : e.offline_queued) {
    trace_.add(Term::make("offline", {num(static_cast<long long>(idx.value_or(0))),
                                      agent_of(agent), wrap("from", Term::atom(d.from)),
                                      wrap("msg", d.msg)}));
  }
  for (const Digest& fp : e.blacklist_broadcasts) {
    for (const AgentName& target : secretary_.live_agents()) {
      if (target != agent) blacklist_q_[target].push_back(fp);
    }
    blacklist_q_["!pool"].push_back(fp);
  }
  for (Term& r : e.submitted_results) submitted_[agent].push_back(std::move(r));
  if (e.quit) {
    trace_.add(Term::make("quit", {num(static_cast<long long>(idx.value_or(0))),
                                   agent_of(agent)}));
    secretary_.deregister(agent);
    auto it = ctrl_.find(agent);
    if (it != ctrl_.end()) pool_.release(it->second->id());
  }
  return idx;
}

Envelope SimNetwork::socket_roundtrip(const Envelope& env) {
  std::string bytes = env.serialize();
  ssize_t sent = send(sock_[0], bytes.data(), bytes.size(), 0);
  if (sent < 0 || static_cast<std::size_t>(sent) != bytes.size())
    throw std::runtime_error("socket transport: send failed");
  std::string buf(bytes.size() + 64, '\0');
  ssize_t got = recv(sock_[1], buf.data(), buf.size(), 0);
  if (got <= 0) throw std::runtime_error("socket transport: recv failed");
  buf.resize(static_cast<std::size_t>(got));
  Envelope back = Envelope::parse(buf);
  if (back.serialize() != bytes)
    throw std::runtime_error("socket transport: round trip not byte-identical");
  return back;
}

void SimNetwork::hop_envelope() {
  auto [id, env] = std::move(wire_.front());
  wire_.pop_front();
  if (cfg_.transport == Transport::Socket) env = socket_roundtrip(env);
  Term eid = num(static_cast<long long>(id));
  auto it = ctrl_.find(env.dst);
  if (it == ctrl_.end()) {
    trace_.add(Term::make("hop", {eid, wrap("dropped", Term::atom("unknown"))}));
    return;
  }
  Effects e = it->second->network_arrival(env);
  if (e.refusal) {
    const char* why = *e.refusal == "dead controller" ? "dead" : "trust";
    trace_.add(Term::make("hop", {eid, wrap("dropped", Term::atom(why))}));
    return;
  }
  auto idx = apply_effects(env.dst, std::move(e));
  trace_.add(Term::make(
      "hop", {eid, wrap("delivered", num(static_cast<long long>(idx.value_or(0))))}));
}

void SimNetwork::hop_submitted(const AgentName& agent) {
  auto qit = submitted_.find(agent);
  Term r = std::move(qit->second.front());
  qit->second.pop_front();
  if (qit->second.empty()) submitted_.erase(qit);
  Effects e = ctrl_.at(agent)->submitted(r);
  if (e.refusal) {
    trace_.add(Term::make("dbDropped", {agent_of(agent), wrap("msg", r)}));
    return;
  }
  apply_effects(agent, std::move(e));
}

void SimNetwork::hop_blacklist(const std::string& target) {
  auto qit = blacklist_q_.find(target);
  Digest fp = std::move(qit->second.front());
  qit->second.pop_front();
  if (qit->second.empty()) blacklist_q_.erase(qit);
  if (target == "!pool") {
    pool_.add_blacklist(fp);
    trace_.add(Term::make("blacklisted", {Term::atom("pool"),
                                          wrap("fp", Term::string(fp))}));
    return;
  }
  auto it = ctrl_.find(target);
  if (it != ctrl_.end()) it->second->add_blacklist(fp);
  trace_.add(Term::make("blacklisted", {agent_of(target), wrap("fp", Term::string(fp))}));
}

bool SimNetwork::deliver_next() {
  struct Cand {
    int cls;
    std::string key;
  };
  std::vector<Cand> cands;
  if (!wire_.empty()) cands.push_back({0, ""});
  for (const auto& [a, q] : submitted_)
    if (!q.empty()) cands.push_back({1, a});
  for (const auto& [t, q] : blacklist_q_)
    if (!q.empty()) cands.push_back({2, t});
  if (cands.empty()) return false;
  const Cand& pick = cands[rng_() % cands.size()];
  switch (pick.cls) {
    case 0: hop_envelope(); break;
    case 1: hop_submitted(pick.key); break;
    default: hop_blacklist(pick.key); break;
  }
  return true;
}

void SimNetwork::drain() {
  while (deliver_next()) {
  }
  trace_.add(wrap("drain", num(static_cast<long long>(++drain_idx_))));
  for (const AgentName& a : secretary_.live_agents()) {
    std::vector<Term> attrs(ctrl_.at(a)->state().attributes.begin(),
                            ctrl_.at(a)->state().attributes.end());
    trace_.add(Term::make(
        "state", {agent_of(a),
                  wrap("community", num(static_cast<long long>(community_of_.at(a)))),
                  Term::list(attrs)}));
  }
}

std::size_t SimNetwork::pending() const {
  std::size_t n = wire_.size();
  for (const auto& [a, q] : submitted_) n += q.size();
  for (const auto& [t, q] : blacklist_q_) n += q.size();
  return n;
}

Member* SimNetwork::member(const AgentName& name) {
  auto it = members_.find(name);
  return it == members_.end() ? nullptr : it->second.get();
}

Controller* SimNetwork::controller_of(const AgentName& name) {
  auto it = ctrl_.find(name);
  return it == ctrl_.end() ? nullptr : it->second;
}

std::optional<Certificate> SimNetwork::certificate_of(const AgentName& name) const {
  auto it = certs_.find(name);
  if (it == certs_.end()) return std::nullopt;
  return it->second;
}

std::map<AgentName, std::set<AgentName>> SimNetwork::subscription_graph() const {
  std::map<AgentName, std::set<AgentName>> g;
  for (const AgentName& a : secretary_.live_agents()) g[a];
  for (const auto& [name, c] : ctrl_) {
    if (!secretary_.is_live(name)) continue;
    for (const Term& t : c->state().with_functor("subList")) {
      if (t.arity() != 2 || !t.args()[1].is_atom()) continue;
      const std::string& peer = t.args()[1].symbol();
      if (!secretary_.is_live(peer)) continue;
      g[name].insert(peer);
      g[peer].insert(name);
    }
  }
  return g;
}

}  // namespace osc::sim
