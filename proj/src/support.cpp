#include "osc/support.hpp"

#include <cctype>
#include <stdexcept>

namespace osc {

std::string Certificate::canonical_content() const {
  std::string out = "cert(issuer(" + issuer + "),subj(" + subject + "),attr(attrs(";
  bool first = true;
  for (const auto& a : attributes) {
    if (!first) out += ',';
    first = false;
    out += a.text();
  }
  out += ")))";
  return out;
}

Term Certificate::to_term() const {
  std::vector<Term> attrs(attributes.begin(), attributes.end());
  return Term::make("cert", {Term::make("issuer", {Term::atom(issuer)}),
                             Term::make("subj", {Term::atom(subject)}),
                             Term::make("attr", {Term::make("attrs", attrs)}),
                             Term::make("fp", {Term::string(fingerprint)})});
}

CertificateAuthority::CertificateAuthority(std::string key, std::string name)
    : key_(std::move(key)), name_(std::move(name)) {}

Certificate CertificateAuthority::issue(const std::string& subject,
                                        const std::set<Term>& attrs) const {
  if (!valid_agent_name(subject))
    throw std::invalid_argument("bad certificate subject: " + subject);
  if (attrs.empty())
    throw std::invalid_argument("certificate needs at least one attribute");
  Certificate c;
  c.issuer = name_;
  c.subject = subject;
  c.attributes = attrs;
  std::string content = c.canonical_content();
  c.fingerprint = sha256_hex(content);
  c.signature = hmac_sha256_hex(key_, content);
  return c;
}

bool CertificateAuthority::verify(const Certificate& cert) const {
  std::string content = cert.canonical_content();
  if (cert.fingerprint != sha256_hex(content)) return false;
  return cert.signature == hmac_sha256_hex(key_, content);
}

bool valid_agent_name(const std::string& name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char ch : name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
  }
  return true;
}

AgentName Secretary::register_name(const std::string& requested) {
  if (!valid_agent_name(requested))
    throw std::invalid_argument("bad agent name: " + requested);
  std::string name = requested;
  if (used_.count(name)) {
    int& n = suffix_[requested];
    if (n < 2) n = 2;
    while (used_.count(requested + "_" + std::to_string(n))) ++n;
    name = requested + "_" + std::to_string(n);
  }
  used_.insert(name);
  return name;
}

void Secretary::set_locator(const AgentName& name, std::size_t controller_id) {
  live_[name] = controller_id;
}

std::optional<std::size_t> Secretary::resolve(const AgentName& name) const {
  auto it = live_.find(name);
  if (it == live_.end()) return std::nullopt;
  return it->second;
}

void Secretary::deregister(const AgentName& name) { live_.erase(name); }

bool Secretary::is_live(const AgentName& name) const { return live_.count(name) > 0; }

std::vector<AgentName> Secretary::live_agents() const {
  std::vector<AgentName> out;
  for (const auto& [name, id] : live_) out.push_back(name);
  return out;
}

}  // namespace osc
