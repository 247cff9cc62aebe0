#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "osc/controller.hpp"
#include "osc/member.hpp"
#include "osc/pool.hpp"
#include "osc/sim/trace.hpp"
#include "osc/support.hpp"

namespace osc::sim {

enum class Transport { Sim, Socket };

struct NetConfig {
  std::uint64_t seed = 1;
  std::size_t capacity = 64;
  std::string ca_key = "community-key";
  std::vector<std::string> db_prefixes{"intra://"};
  Transport transport = Transport::Sim;
};

// In-process network of controllers plus the community support services
// (CA, secretary, controller pool), with a deterministic scheduler and a
// full trace of everything that happens.
//
// Scheduling: each step the seeded generator picks among the ready queues.
// Envelopes move strictly in creation order (which implies FIFO per pair);
// database results and blacklist updates ride their own per-target queues,
// so their hops interleave with envelope hops seed-dependently. Envelope
// creation order matters: a query flood then reaches nodes in hop layers,
// and the TTL a node sees depends only on its graph distance.
class SimNetwork {
public:
  SimNetwork(NetConfig cfg, std::vector<std::shared_ptr<const Law>> laws);
  ~SimNetwork();
  SimNetwork(const SimNetwork&) = delete;
  SimNetwork& operator=(const SimNetwork&) = delete;

  struct AdoptOutcome {
    bool accepted = false;
    AgentName name;
    std::string reason;
  };

  // Registers a fresh name with the secretary, has the CA issue the
  // certificate, allocates a controller and runs admission on it.
  AdoptOutcome adopt(const std::string& requested, const std::vector<Term>& attrs,
                     std::size_t community = 0, const std::string& db_address = "");
  // Presents an archived certificate again (e.g. after revocation).
  AdoptOutcome readopt_certificate(const Certificate& cert, std::size_t community = 0);
  void certify(const AgentName& agent, const std::vector<Term>& attrs);

  Term start_search(const AgentName& agent, const Term& predicate, long long ttl,
                    long long threshold);
  void detach_actor(const AgentName& agent);
  void attach_actor(const AgentName& agent);

  bool deliver_next();  // one hop; false when nothing is pending
  void drain();         // run dry, then snapshot every live agent's state
  std::size_t pending() const;

  Member* member(const AgentName& name);
  Controller* controller_of(const AgentName& name);
  std::optional<Certificate> certificate_of(const AgentName& name) const;
  // Live subscription relationships as an undirected adjacency map.
  std::map<AgentName, std::set<AgentName>> subscription_graph() const;

  Trace& trace() { return trace_; }
  Secretary& secretary() { return secretary_; }
  ControllerPool& pool() { return pool_; }
  const NetConfig& config() const { return cfg_; }
  const std::vector<std::shared_ptr<const Law>>& laws() const { return laws_; }

private:
  void actor_send(const AgentName& agent, const AgentName& target, const Term& msg);
  std::optional<std::size_t> apply_effects(const AgentName& agent, Effects e);
  AdoptOutcome admit(const AgentName& name, const Certificate& cert,
                     std::size_t community, const std::string& db_address);
  Envelope socket_roundtrip(const Envelope& env);
  void hop_envelope();
  void hop_submitted(const AgentName& agent);
  void hop_blacklist(const std::string& target);

  NetConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<std::shared_ptr<const Law>> laws_;
  CertificateAuthority ca_;
  Secretary secretary_;
  ControllerPool pool_;
  std::map<AgentName, std::unique_ptr<Member>> members_;
  std::map<AgentName, Controller*> ctrl_;
  std::map<AgentName, std::size_t> community_of_;
  std::map<AgentName, Certificate> certs_;

  std::deque<std::pair<std::size_t, Envelope>> wire_;
  std::map<AgentName, std::deque<Term>> submitted_;
  std::map<std::string, std::deque<Digest>> blacklist_q_;

  std::size_t eval_idx_ = 0;
  std::size_t env_idx_ = 0;
  std::size_t drain_idx_ = 0;
  int sock_[2] = {-1, -1};

  Trace trace_;
};

}  // namespace osc::sim
