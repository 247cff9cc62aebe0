#include "osc/controller.hpp"

#include <variant>

namespace osc {

Controller::Controller(std::size_t id, ControllerConfig cfg, std::set<Digest> blacklist)
    : id_(id),
      cfg_(std::move(cfg)),
      ca_check_(cfg_.ca_key),
      blacklist_(std::move(blacklist)) {}

Controller::AdoptDecision Controller::adopt(const AgentName& actor,
                                            std::shared_ptr<const Law> law,
                                            const Certificate& cert,
                                            const std::string& db_address) {
  AdoptDecision d;
  if (alive_) {
    d.reason = "controller already assigned";
    return d;
  }
  if (!law) {
    d.reason = "no community law loaded";
    return d;
  }
  if (!ca_check_.verify(cert)) {
    d.reason = "certificate signature rejected";
    return d;
  }
  if (blacklist_.count(cert.fingerprint)) {
    d.reason = "certificate fingerprint is blacklisted";
    return d;
  }
  if (cert.subject != actor) {
    d.reason = "certificate subject does not name the adopting agent";
    return d;
  }
  if (!MemberDatabase::address_allowed(db_address, cfg_.db_prefixes)) {
    d.reason = "database address outside the allowed domain";
    return d;
  }

  ControlState init;
  init.controlled_marks = law->controlled_attributes;
  Event ev{EventKind::Adopted, actor, actor, cert.to_term()};
  EvalResult r = evaluate(*law, ev, init);

  bool quits = false;
  for (const RulingOp& op : r.ops) quits = quits || op_is_quit(op);
  if (!r.matched || quits || r.diagnostic) {
    d.reason = "law refused adoption";
    d.effects.eval = EvalRecord{ev, std::move(r)};
    return d;
  }

  agent_ = actor;
  law_ = std::move(law);
  cert_ = cert;
  db_ = std::make_unique<MemberDatabase>(db_address);
  alive_ = true;
  attached_ = true;
  state_.controlled_marks = init.controlled_marks;
  d.accepted = true;
  d.effects = apply_ruling(ev, std::move(r));
  return d;
}

Effects Controller::certify(const Certificate& cert) {
  Effects e;
  if (!alive_) {
    e.refusal = "dead controller";
    return e;
  }
  if (!ca_check_.verify(cert)) {
    e.refusal = "certificate signature rejected";
    return e;
  }
  if (blacklist_.count(cert.fingerprint)) {
    e.refusal = "certificate fingerprint is blacklisted";
    return e;
  }
  if (cert.subject != agent_) {
    e.refusal = "certificate subject does not name this agent";
    return e;
  }
  return run_event(Event{EventKind::Certified, agent_, agent_, cert.to_term()});
}

Effects Controller::actor_send(const AgentName& target, const Term& msg) {
  if (!alive_) {
    Effects e;
    e.refusal = "dead controller";
    return e;
  }
  return run_event(Event{EventKind::Sent, agent_, target, msg});
}

Effects Controller::network_arrival(const Envelope& env) {
  Effects e;
  if (!alive_) {
    e.refusal = "dead controller";
    return e;
  }
  if (!verify_peer(env)) {
    e.refusal = "law hash mismatch";
    return e;
  }
  return run_event(Event{EventKind::Arrived, env.src, agent_, env.msg});
}

Effects Controller::submitted(const Term& result) {
  if (!alive_) {
    Effects e;
    e.refusal = "dead controller";
    return e;
  }
  return run_event(Event{EventKind::Submitted, "db", agent_, result});
}

bool Controller::verify_peer(const Envelope& env) const {
  return law_ != nullptr && env.law_hash == law_->hash();
}

std::vector<Effects::Delivery> Controller::attach() {
  if (!alive_) return {};
  attached_ = true;
  std::vector<Effects::Delivery> out(offline_queue_.begin(), offline_queue_.end());
  offline_queue_.clear();
  return out;
}

Effects Controller::run_event(const Event& ev) {
  return apply_ruling(ev, evaluate(*law_, ev, state_));
}

Effects Controller::apply_ruling(const Event& ev, EvalResult r) {
  Effects e;
  e.eval = EvalRecord{ev, std::move(r)};
  const EvalResult& ruling = e.eval->result;
  if (ruling.diagnostic && !ruling.matched) return e;

  state_ = ruling.state;
  for (const RulingOp& op : ruling.ops) {
    if (const auto* f = std::get_if<ForwardOp>(&op)) {
      if (!f->dst.is_atom()) continue;
      Envelope env;
      env.src = agent_;
      env.dst = f->dst.symbol();
      env.msg = f->msg;
      env.law_hash = law_->hash();
      env.profile = f->attached_profile;
      e.envelopes.push_back(std::move(env));
    } else if (const auto* d = std::get_if<DeliverOp>(&op)) {
      Effects::Delivery dl{d->src.is_atom() ? d->src.symbol() : d->src.text(), d->msg};
      if (attached_)
        e.deliveries.push_back(std::move(dl));
      else
        e.undeliverable.push_back(std::move(dl));
    } else if (const auto* rl = std::get_if<ReleaseOp>(&op)) {
      if (rl->resource.atom_is("db") && db_)
        e.submitted_results.push_back(db_->execute(rl->msg));
    } else if (const auto* in = std::get_if<InformOp>(&op)) {
      if (in->audience == InformAudience::Controllers) {
        if (in->msg.functor_is("blacklist") && in->msg.arity() == 1 &&
            in->msg.args()[0].is_str()) {
          const Digest& fp = in->msg.args()[0].symbol();
          blacklist_.insert(fp);
          e.blacklist_broadcasts.push_back(fp);
        }
      } else if (!attached_) {
        Effects::Delivery dl{ev.source, in->msg};
        offline_queue_.push_back(dl);
        e.offline_queued.push_back(std::move(dl));
      }
    } else if (std::holds_alternative<QuitOp>(op)) {
      e.quit = true;
    }
    // Add/Remove ops are already reflected in the ruling's state.
  }
  if (e.quit) {
    alive_ = false;
    attached_ = false;
    offline_queue_.clear();
  }
  return e;
}

}  // namespace osc
