#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "osc/control_state.hpp"
#include "osc/envelope.hpp"
#include "osc/event.hpp"
#include "osc/law.hpp"
#include "osc/member_db.hpp"
#include "osc/support.hpp"

namespace osc {

struct ControllerConfig {
  std::string ca_key = "community-key";
  std::vector<std::string> db_prefixes{"intra://"};
};

struct EvalRecord {
  Event event;
  EvalResult result;
};

// Externally visible consequences of one regulated event. The caller (the
// network harness, or a test) is responsible for routing them.
struct Effects {
  struct Delivery {
    AgentName from;
    Term msg;
  };

  std::optional<EvalRecord> eval;
  std::vector<Envelope> envelopes;
  std::vector<Delivery> deliveries;
  // Deliver ops that found the actor detached; dropped, never queued.
  std::vector<Delivery> undeliverable;
  // Inform-offline ops queued while the actor is detached.
  std::vector<Delivery> offline_queued;
  std::vector<Digest> blacklist_broadcasts;
  std::vector<Term> submitted_results;
  bool quit = false;
  // Set when the event was rejected before any ruling (dead controller,
  // law-hash mismatch, ...). No other field is populated alongside it.
  std::optional<std::string> refusal;
};

// One agent's mediator. Holds the agent's control state and law, turns the
// five regulated event kinds into rulings, and executes the resulting
// operations. All messaging passes through here in both directions.
class Controller {
public:
  Controller(std::size_t id, ControllerConfig cfg, std::set<Digest> blacklist);

  struct AdoptDecision {
    bool accepted = false;
    std::string reason;
    Effects effects;
  };

  // Admission: checks run in order (law present, certificate signature,
  // blacklist, database domain) before the law itself rules on the adopted
  // event. The law admits when some rule matched and none of its operations
  // was a quit.
  AdoptDecision adopt(const AgentName& actor, std::shared_ptr<const Law> law,
                      const Certificate& cert, const std::string& db_address);

  Effects certify(const Certificate& cert);
  Effects actor_send(const AgentName& target, const Term& msg);
  Effects network_arrival(const Envelope& env);
  Effects submitted(const Term& result);

  // Interaction trust: accept only envelopes stamped with this law's hash.
  bool verify_peer(const Envelope& env) const;

  void add_blacklist(const Digest& fp) { blacklist_.insert(fp); }
  const std::set<Digest>& blacklist() const { return blacklist_; }

  // Actor presence. Detaching makes Deliver ops fail and Inform-offline ops
  // queue; attach returns the queued notices for the actor.
  std::vector<Effects::Delivery> attach();
  void detach() { attached_ = false; }
  bool attached() const { return attached_; }

  std::size_t id() const { return id_; }
  const AgentName& agent() const { return agent_; }
  const std::shared_ptr<const Law>& law() const { return law_; }
  const ControlState& state() const { return state_; }
  bool alive() const { return alive_; }
  const std::optional<Certificate>& certificate() const { return cert_; }
  MemberDatabase* database() { return db_.get(); }

private:
  Effects run_event(const Event& ev);
  Effects apply_ruling(const Event& ev, EvalResult r);

  std::size_t id_;
  ControllerConfig cfg_;
  CertificateAuthority ca_check_;
  std::set<Digest> blacklist_;

  AgentName agent_;
  std::shared_ptr<const Law> law_;
  ControlState state_;
  std::optional<Certificate> cert_;
  std::unique_ptr<MemberDatabase> db_;
  bool alive_ = false;
  bool attached_ = false;
  std::deque<Effects::Delivery> offline_queue_;
};

}  // namespace osc
