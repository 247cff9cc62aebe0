#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "osc/digest.hpp"
#include "osc/event.hpp"
#include "osc/term.hpp"

namespace osc {

// Membership certificate issued by the community CA. Signatures are keyed
// MACs: every controller holds the community key and can check them without
// a public-key infrastructure. The fingerprint identifies the certificate
// in blacklists.
struct Certificate {
  std::string issuer;
  std::string subject;
  std::set<Term> attributes;
  Digest fingerprint;
  std::string signature;

  // Signed content; attribute order is the canonical term order.
  std::string canonical_content() const;
  // cert(issuer(i), subj(s), attr(attrs(...)), fp("hex")) as seen by laws.
  Term to_term() const;
};

class CertificateAuthority {
public:
  explicit CertificateAuthority(std::string key, std::string name = "ca");

  // Throws std::invalid_argument when attrs is empty or the subject is not
  // a valid agent atom.
  Certificate issue(const std::string& subject, const std::set<Term>& attrs) const;
  bool verify(const Certificate& cert) const;
  const std::string& name() const { return name_; }
  const std::string& key() const { return key_; }

private:
  std::string key_;
  std::string name_;
};

bool valid_agent_name(const std::string& name);

// Community secretary: hands out unique agent names and maps live agents to
// their controllers. A name, once used, is never assigned again, even after
// its owner quits; collisions get a numeric suffix (alice, alice_2, ...).
class Secretary {
public:
  AgentName register_name(const std::string& requested);
  void set_locator(const AgentName& name, std::size_t controller_id);
  std::optional<std::size_t> resolve(const AgentName& name) const;
  void deregister(const AgentName& name);
  bool is_live(const AgentName& name) const;
  std::vector<AgentName> live_agents() const;

private:
  std::set<std::string> used_;
  std::map<std::string, int> suffix_;
  std::map<AgentName, std::size_t> live_;
};

}  // namespace osc
