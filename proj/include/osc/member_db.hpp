#pragma once

#include <map>
#include <string>
#include <vector>

#include "osc/term.hpp"

namespace osc {

// Per-member post store living inside the enterprise network. The address
// must fall under one of the allowed prefixes; personal controllers run for
// members, but their storage never leaves the intranet domain.
//
// Queries and replies are plain terms:
//   create(post(Type, Body, Id))  -> ok(Id) | err(duplicate, Id)
//   update(post(Type, Body, Id))  -> ok(Id) | err(notFound, Id)
//   delete(Id)                    -> ok(Id) | err(notFound, Id)
//   read(Tag, Pattern)            -> readResult(Tag, [matches...])
// Anything else                   -> err(malformed, Query)
class MemberDatabase {
public:
  explicit MemberDatabase(std::string address);

  static bool address_allowed(const std::string& address,
                              const std::vector<std::string>& prefixes);

  Term execute(const Term& query);

  const std::string& address() const { return address_; }
  std::size_t size() const { return rows_.size(); }
  std::vector<Term> rows() const;

private:
  std::string address_;
  std::map<Term, Term> rows_;  // post id -> full post term
};

}  // namespace osc
