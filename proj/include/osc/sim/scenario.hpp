#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osc/sim/network.hpp"
#include "osc/sim/trace.hpp"
#include "osc/term.hpp"

namespace osc::sim {

// Scripted network runs. The text format is line-oriented:
//
//   scenario basic_pubsub
//   seed 7
//   capacity 64
//   cakey "community-key"
//   dbprefix "intra://"
//   transport sim
//   law "laws/be.law"          # first law = community 0, next = 1, ...
//
//   adopt alice [role(manager), group(all)]
//   adopt2 zoe [group(all)]    # adopt into community 1
//   readopt alice              # present alice's archived certificate again
//   certify alice [group(t1)]
//   addprofile alice interest(chess)
//   updateprofile alice interest(go)
//   addfilter alice group(t2)
//   publish alice #management# "quarterly numbers"
//   subscribe bob alice        # subscriber first
//   dm alice bob #social# "hello"
//   dbop alice read(all, post(T, B, I))
//   search alice post(#management#, B, I) 2 3     # ttl, threshold
//   revoke alice bob
//   detach bob
//   attach bob
//   drain
//
// Steps may only reference agents adopted on an earlier line. A trailing
// drain is implied when missing.
struct Step {
  enum class Kind {
    Adopt,
    Readopt,
    Certify,
    AddProfile,
    UpdateProfile,
    AddFilter,
    Publish,
    Subscribe,
    Dm,
    DbOp,
    Search,
    Revoke,
    Detach,
    Attach,
    Drain,
  };

  Kind kind = Kind::Drain;
  std::string a, b;
  std::string tag;
  std::string body;
  Term term;
  long long ttl = 0;
  long long threshold = 0;
  std::size_t community = 0;
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  std::size_t capacity = 64;
  std::string ca_key = "community-key";
  std::vector<std::string> db_prefixes;  // empty keeps the default
  Transport transport = Transport::Sim;
  std::vector<std::string> law_files;
  std::vector<Step> steps;
};

// base_dir anchors relative law paths.
Scenario parse_scenario(std::string_view text, const std::string& base_dir);
Scenario load_scenario_file(const std::string& path);

Trace run_scenario(const Scenario& sc,
                   std::optional<std::uint64_t> seed_override = {},
                   std::optional<Transport> transport_override = {});

}  // namespace osc::sim
