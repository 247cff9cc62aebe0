// Acceptance gate: eight end-to-end criteria, one verdict line each. The
// process exits with the number of failed criteria, so any nonzero status
// fails the suite.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "osc/law_parser.hpp"
#include "osc/sim/checks.hpp"
#include "osc/sim/scenario.hpp"
#include "util.hpp"

using namespace osc;
using namespace osc::sim;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- trace digging ----------------------------------------------------

struct Row {
  long long idx = -1;
  AgentName agent;
  Term event = Term::atom("none");
  Term verdict = Term::atom("none");
  std::vector<Term> ops;
};

std::vector<Row> rulings(const Trace& t) {
  std::map<long long, Row> by;
  std::vector<long long> order;
  for (const Term& r : t.records()) {
    if (r.functor_is("evaluate") && r.arity() == 3) {
      Row w;
      w.idx = r.args()[0].value();
      w.agent = r.args()[1].args()[0].symbol();
      w.event = r.args()[2];
      order.push_back(w.idx);
      by[w.idx] = std::move(w);
    } else if (r.functor_is("ruling") && r.arity() == 3) {
      auto it = by.find(r.args()[0].value());
      if (it != by.end()) {
        it->second.verdict = r.args()[1];
        it->second.ops = r.args()[2].args();
      }
    }
  }
  std::vector<Row> out;
  out.reserve(order.size());
  for (long long i : order) out.push_back(by[i]);
  return out;
}

bool matched(const Row& w, const char* label) {
  return w.verdict.functor_is("matched") && w.verdict.arity() == 1 &&
         w.verdict.args()[0].atom_is(label);
}

long long count_matched(const std::vector<Row>& rows, const char* label) {
  long long n = 0;
  for (const Row& w : rows) n += matched(w, label);
  return n;
}

std::set<Term> final_attrs(const Trace& t, const AgentName& agent) {
  std::set<Term> out;
  for (const Term& r : t.records()) {
    if (!r.functor_is("state") || r.arity() != 3) continue;
    if (r.args()[0].args()[0].symbol() != agent) continue;
    out = std::set<Term>(r.args()[2].args().begin(), r.args()[2].args().end());
  }
  return out;
}

bool has_attr(const std::set<Term>& attrs, const std::string& text) {
  return attrs.count(parse_term(text)) != 0;
}

bool has_attr_functor(const std::set<Term>& attrs, const std::string& f) {
  for (const Term& a : attrs)
    if (a.is_compound() && a.symbol() == f) return true;
  return false;
}

struct Del {
  AgentName agent, from;
  Term msg;
};

std::vector<Del> delivers(const Trace& t) {
  std::vector<Del> out;
  for (const Term& r : t.records())
    if (r.functor_is("deliver") && r.arity() == 4)
      out.push_back({r.args()[1].args()[0].symbol(), r.args()[2].args()[0].symbol(),
                     r.args()[3].args()[0]});
  return out;
}

long long count_delivered(const std::vector<Del>& ds, const AgentName& agent,
                          const std::string& msg) {
  Term want = parse_term(msg);
  long long n = 0;
  for (const Del& d : ds) n += d.agent == agent && d.msg == want;
  return n;
}

struct Env {
  long long id;
  AgentName src, dst;
  Term msg, profile;
};

std::vector<Env> envelopes(const Trace& t) {
  std::vector<Env> out;
  for (const Term& r : t.records())
    if (r.functor_is("envelope") && r.arity() == 7)
      out.push_back({r.args()[0].value(), r.args()[2].args()[0].symbol(),
                     r.args()[3].args()[0].symbol(), r.args()[5].args()[0],
                     r.args()[6].args()[0]});
  return out;
}

long long count_records(const Trace& t, const char* functor) {
  long long n = 0;
  for (const Term& r : t.records()) n += r.is_compound() && r.symbol() == functor;
  return n;
}

std::string suites_verdict(const Trace& t, const std::vector<std::string>& which = {}) {
  for (const CheckResult& c : check_trace(t, which))
    if (!c.pass) return c.name + ": " + c.detail;
  return "";
}

Trace run_rule_fixture(const std::string& stem) {
  return run_scenario(load_scenario_file(testutil::repo_path("fixtures/rules/" + stem)));
}

// ---- criterion 1: one scripted scenario per original community rule ----

using RuleCheck = std::function<std::string(const Trace&)>;

// Every checker returns "" on success or a short reason on failure.
std::vector<std::pair<std::string, RuleCheck>> rule_checks() {
  auto need = [](std::string& err, bool ok, const char* why) {
    if (!ok && err.empty()) err = why;
  };

  std::vector<std::pair<std::string, RuleCheck>> out;

  out.emplace_back("rule01_adoption.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "adoptMember") == 2, "adoption rule did not fire twice");
    auto a = final_attrs(t, "alice");
    need(err, has_attr(a, "role(manager)"), "alice lost her role attribute");
    need(err, has_attr(a, "group(all)"), "alice lost her group attribute");
    need(err, has_attr(a, "realName(\"Alice Smith\")"), "alice lost her real name");
    need(err, has_attr(a, "loginID(asmith)"), "alice lost her login id");
    need(err, has_attr_functor(a, "certFp"), "alice has no certificate fingerprint");
    need(err, has_attr(final_attrs(t, "bob"), "role(employee)"), "bob not seeded");
    return err;
  });

  out.emplace_back("rule02_add_profile.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "addProfileAttr") == 3, "profile-add rule miscounted");
    auto a = final_attrs(t, "alice");
    need(err, has_attr(a, "interest(chess)"), "free attribute was not added");
    need(err, !has_attr_functor(a, "role"), "controlled role attribute was grabbed");
    need(err, !has_attr(a, "certFp(\"forged\")"), "fingerprint was overwritten");
    for (const Row& w : rows) {
      if (!matched(w, "addProfileAttr")) continue;
      const Term& attr = w.event.args()[1].args()[0];
      if (attr.functor_is("role") || attr.functor_is("certFp"))
        need(err, w.ops.empty(), "controlled add mandated operations");
    }
    return err;
  });

  out.emplace_back("rule03_update_profile.osc", [need](const Trace& t) {
    std::string err;
    auto a = final_attrs(t, "alice");
    need(err, has_attr(a, "interest(go)"), "update did not install the new value");
    need(err, !has_attr(a, "interest(chess)"), "update left the first old value");
    need(err, !has_attr(a, "interest(shogi)"), "update left the second old value");
    need(err, has_attr(a, "group(all)"), "group vanished");
    need(err, !has_attr(a, "group(t1)"), "controlled group update went through");
    return err;
  });

  out.emplace_back("rule04_certification.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "joinTaskForceOne") == 1, "t1 rule miscounted");
    need(err, count_matched(rows, "joinTaskForceTwo") == 1, "t2 rule miscounted");
    need(err, count_matched(rows, "joinGroup") == 1, "plain join miscounted");
    auto ann = final_attrs(t, "ann");
    need(err, has_attr(ann, "group(t1)") && has_attr(ann, "filter(group(t2))"),
         "t1 join did not install the rival filter");
    auto ben = final_attrs(t, "ben");
    need(err, has_attr(ben, "group(t2)") && has_attr(ben, "filter(group(t1))"),
         "t2 join did not install the rival filter");
    auto cat = final_attrs(t, "cat");
    need(err, has_attr(cat, "group(sales)") && has_attr(cat, "position(lead)"),
         "plain join dropped certificate attributes");
    need(err, !has_attr_functor(cat, "filter"), "plain join installed a filter");
    return err;
  });

  out.emplace_back("rule05_filter.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "addSubscriptionFilter") == 1, "filter rule miscounted");
    auto a = final_attrs(t, "alice");
    need(err, has_attr(a, "filter(group(t2))"), "filter not installed");
    need(err, !has_attr(a, "subList(all, dan)") && !has_attr(a, "subList(t2, dan)"),
         "filtered subscriber was enrolled");
    need(err, has_attr(a, "subList(all, eve)"), "clean subscriber was not enrolled");
    auto ds = delivers(t);
    need(err, count_delivered(ds, "dan", "subscribeNotAllowed") == 1,
         "filtered subscriber missed the refusal");
    need(err, count_delivered(ds, "eve", "subscribeAllowed") == 1,
         "clean subscriber missed the grant");
    return err;
  });

  out.emplace_back("rule06_revoke_gate.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    bool bounced = false;
    for (const Row& w : rows) {
      if (!matched(w, "sendRevoke") || w.agent != "bob") continue;
      bounced = w.ops.size() == 1 && w.ops[0] == parse_term("deliver(bob, notAllow, bob)");
    }
    need(err, bounced, "non-manager revoke was not bounced with notAllow");
    for (const Env& e : envelopes(t))
      need(err, !e.msg.atom_is("#revoke#"), "a revoke envelope left a non-manager");
    need(err, count_records(t, "quit") == 0, "someone quit in the bounce scenario");
    need(err, count_delivered(delivers(t), "bob", "notAllow") == 1,
         "sender did not read the bounce");
    return err;
  });

  out.emplace_back("rule07_revoke_arrival.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "receiveRevoke") == 1, "revoke arrival miscounted");
    for (const Row& w : rows) {
      if (!matched(w, "receiveRevoke")) continue;
      bool informs = false, quits = false;
      for (const Term& op : w.ops) {
        informs = informs || (op.functor_is("inform") && op.arity() == 2 &&
                              op.args()[0].functor_is("blacklist"));
        quits = quits || op.atom_is("quit");
      }
      need(err, informs, "revocation did not broadcast the fingerprint");
      need(err, quits, "revocation did not quit the controller");
    }
    need(err, count_records(t, "quit") == 1, "exactly one quit expected");
    long long pool = 0, agents = 0;
    for (const Term& r : t.records()) {
      if (!r.functor_is("blacklisted")) continue;
      if (r.args()[0].atom_is("pool")) ++pool;
      else ++agents;
    }
    need(err, pool == 1, "the controller pool missed the blacklist update");
    need(err, agents == 2, "a live controller missed the blacklist update");
    bool refused = false;
    for (const Term& r : t.records())
      if (r.functor_is("sendRefused") && r.args()[0].args()[0].atom_is("mallory"))
        refused = true;
    need(err, refused, "the revoked member could still send");
    return err;
  });

  out.emplace_back("rule08_db_access.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "dbAccess") == 4, "whitelist admitted a wrong count");
    bool drop_unmatched = false;
    for (const Row& w : rows)
      if (w.event.text().find("drop(everything)") != std::string::npos)
        drop_unmatched = w.verdict.atom_is("unmatched") && w.ops.empty();
    need(err, drop_unmatched, "a non-whitelisted query was not ignored");
    auto ds = delivers(t);
    need(err, count_delivered(ds, "alice", "ok(pid(alice, 77))") == 3,
         "create/update/delete acknowledgements missing");
    need(err,
         count_delivered(ds, "alice",
                         "readResult(all, [post(#social#, \"kept\", "
                         "pid(alice, 77))])") == 1,
         "read did not return the stored post");
    return err;
  });

  out.emplace_back("rule09_db_result.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "dbResult") == 2, "db results miscounted");
    auto ds = delivers(t);
    need(err, count_delivered(ds, "alice", "ok(pid(alice, 1))") == 1,
         "create acknowledgement missing");
    need(err,
         count_delivered(
             ds, "alice",
             "readResult(mine, [post(#social#, \"first\", pid(alice, 1))])") == 1,
         "read result missing or wrong");
    for (const Del& d : ds)
      if (d.msg.functor_is("ok") || d.msg.functor_is("readResult"))
        need(err, d.from == "db", "db result not attributed to the store");
    return err;
  });

  out.emplace_back("rule10_publish.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "publishPost") == 3, "publish rule miscounted");
    long long fanout = 0, releases = 0;
    for (const Row& w : rows) {
      if (!matched(w, "publishPost")) continue;
      if (w.agent == "bob") {
        need(err, w.ops.empty(), "non-manager management post was not suppressed");
        continue;
      }
      std::set<std::string> dsts;
      for (const Term& op : w.ops) {
        if (op.functor_is("forward")) dsts.insert(op.args()[2].symbol());
        if (op.functor_is("release")) ++releases;
      }
      need(err, dsts == std::set<std::string>{"bob", "carol"},
           "fan-out differs from the subscriber lists");
      fanout += static_cast<long long>(dsts.size());
    }
    need(err, fanout == 4 && releases == 2, "wrong number of forwards or db writes");
    auto a = final_attrs(t, "alice");
    need(err, has_attr(a, "lastTenPosts([pid(alice, 2), pid(alice, 1)])"),
         "recent posts not tracked newest-first");
    need(err, !has_attr_functor(final_attrs(t, "bob"), "lastTenPosts"),
         "suppressed publish still recorded a post");
    auto ds = delivers(t);
    need(err,
         count_delivered(ds, "bob", "post(#social#, \"team lunch friday\", "
                                    "pid(alice, 1))") == 1,
         "subscriber bob missed the post");
    need(err,
         count_delivered(ds, "carol", "post(#management#, \"budget approved\", "
                                      "pid(alice, 2))") == 1,
         "subscriber carol missed the post");
    return err;
  });

  out.emplace_back("rule11_receive_post.osc", [need](const Trace& t) {
    std::string err;
    need(err, count_records(t, "detached") == 1 && count_records(t, "attached") == 1,
         "presence records missing");
    bool undelivered = false, queued = false, flushed = false;
    Term post = parse_term("post(#social#, \"missed while away\", pid(alice, 1))");
    for (const Term& r : t.records()) {
      if (r.functor_is("undelivered") && r.args()[2].args()[0] == post)
        undelivered = true;
      if (r.functor_is("offline") && r.args()[3].args()[0] == post) queued = true;
      if (r.functor_is("offlineFlush") && r.args()[0].args()[0].atom_is("bob") &&
          r.args()[1].args()[0].atom_is("alice") && r.args()[2].args()[0] == post)
        flushed = true;
    }
    need(err, undelivered, "detached delivery was not flagged");
    need(err, queued, "post was not queued for the offline actor");
    need(err, flushed, "reattachment did not flush the queue");
    return err;
  });

  out.emplace_back("rule12_subscribe_request.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "requestSubscription") == 1, "request miscounted");
    need(err, count_matched(rows, "handleSubscription") == 1, "handling miscounted");
    need(err, count_matched(rows, "subscriptionAccepted") == 1, "grant miscounted");
    bool shaped = false;
    for (const Env& e : envelopes(t)) {
      if (!e.msg.functor_is("requestSubscribe")) continue;
      shaped = e.msg == parse_term(
                            "requestSubscribe(profile(group(all), interest(news)))");
    }
    need(err, shaped, "profile splice wrong or leaked internal attributes");
    need(err, has_attr(final_attrs(t, "alice"), "subList(all, bob)"),
         "publisher did not enroll the subscriber");
    need(err, count_delivered(delivers(t), "alice", "subscribed(bob)") == 1,
         "publisher actor was not told about the enrollment");
    return err;
  });

  out.emplace_back("rule13_subscribe_verdicts.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "handleSubscription") == 3, "handling miscounted");
    auto a = final_attrs(t, "alice");
    need(err, has_attr(a, "subList(all, bob)") && has_attr(a, "subList(t1, bob)"),
         "shared-group subscriber not enrolled per group");
    need(err, !has_attr(a, "subList(all, mia)") && !has_attr(a, "subList(t3, mia)"),
         "filtered subscriber was enrolled");
    bool zed_listed = false;
    for (const Term& attr : a)
      if (attr.functor_is("subList") && attr.args()[1].atom_is("zed")) zed_listed = true;
    need(err, !zed_listed, "no-shared-group subscriber was enrolled");
    auto ds = delivers(t);
    need(err, count_delivered(ds, "bob", "subscribeAllowed") == 1, "grant missing");
    need(err, count_delivered(ds, "mia", "subscribeNotAllowed") == 1, "refusal missing");
    need(err, count_delivered(ds, "zed", "subscribeAllowed") == 1,
         "empty grant should still be answered");
    return err;
  });

  out.emplace_back("rule14_dm_send.osc", [need](const Trace& t) {
    std::string err;
    auto rows = rulings(t);
    need(err, count_matched(rows, "sendDirect") == 1, "dm send miscounted");
    bool shaped = false;
    for (const Env& e : envelopes(t))
      if (e.msg == parse_term("dm(msg(#chat#, \"profile travels with this\"), "
                              "profile(group(all), group(t1)))"))
        shaped = e.profile == parse_term("profile(group(all), group(t1))");
    need(err, shaped, "dm did not carry the sender profile");
    need(err,
         count_delivered(delivers(t), "bob",
                         "msg(#chat#, \"profile travels with this\")") == 1,
         "receiver did not get the unwrapped message");
    return err;
  });

  out.emplace_back("rule15_dm_receive.osc", [need](const Trace& t) {
    std::string err;
    auto ds = delivers(t);
    need(err,
         count_delivered(ds, "bob", "msg(#chat#, \"shared group, should land\")") == 1,
         "shared-group dm was not delivered");
    for (const Del& d : ds)
      need(err, d.agent != "zed", "cross-group dm reached the receiver actor");
    bool discarded = false;
    for (const Row& w : rulings(t))
      if (w.agent == "zed" && w.event.functor_is("arrived"))
        discarded = w.verdict.atom_is("unmatched") && w.ops.empty();
    need(err, discarded, "cross-group dm was not discarded at arrival");
    long long hops_delivered = 0;
    for (const Term& r : t.records())
      if (r.functor_is("hop") && r.args()[1].functor_is("delivered")) ++hops_delivered;
    need(err, hops_delivered == 2, "both dm envelopes should pass the trust check");
    return err;
  });

  return out;
}

bool criterion1() {
  auto t0 = Clock::now();
  int pass = 0, total = 0;
  std::string first_fail;
  for (const auto& [file, fn] : rule_checks()) {
    ++total;
    Trace t = run_rule_fixture(file);
    std::string err = fn(t);
    if (err.empty()) err = suites_verdict(t);
    if (err.empty()) {
      ++pass;
    } else if (first_fail.empty()) {
      first_fail = file + ": " + err;
    }
  }
  double dt = seconds_since(t0);
  bool ok = pass == total && total == 15 && dt < 10.0;
  std::printf("1. per-rule scenarios: %s (%d/%d in %.2fs)%s%s\n", ok ? "PASS" : "FAIL",
              pass, total, dt, first_fail.empty() ? "" : " first failure: ",
              first_fail.c_str());
  return ok;
}

// ---- criterion 2: revocation end-to-end --------------------------------

bool criterion2() {
  NetConfig cfg;
  cfg.seed = 2026;
  cfg.capacity = 40;
  SimNetwork net(cfg, {load_law_file(testutil::repo_path("laws/be.law"))});
  const AgentName victim = "m7";
  std::vector<AgentName> names;
  for (int i = 0; i < 20; ++i) {
    std::vector<Term> attrs{parse_term("group(all)")};
    if (i == 0) attrs.push_back(parse_term("role(manager)"));
    auto out = net.adopt("m" + std::to_string(i), attrs);
    if (!out.accepted) {
      std::printf("2. revocation end-to-end: FAIL (adoption refused: %s)\n",
                  out.reason.c_str());
      return false;
    }
    names.push_back(out.name);
  }
  for (const AgentName& n : names)
    if (n != victim) net.member(n)->subscribe_to(victim);
  net.member(victim)->subscribe_to("m1");
  net.drain();
  net.member(victim)->publish("#social#", "pre-revocation post");
  net.drain();
  net.member("m0")->revoke(victim);
  net.drain();
  for (const char* n : {"m1", "m2", "m3"})
    net.member(n)->publish("#social#", "post-revocation post");
  net.member("m1")->direct_message(victim, "#chat#", "anyone there?");
  net.drain();

  const Trace& t = net.trace();
  std::size_t quit_at = t.records().size();
  for (std::size_t i = 0; i < t.records().size(); ++i)
    if (t.records()[i].functor_is("quit") &&
        t.records()[i].args()[1].args()[0].atom_is(victim))
      quit_at = i;
  long long late_sources = 0, late_delivers = 0;
  for (std::size_t i = quit_at; i < t.records().size(); ++i) {
    const Term& r = t.records()[i];
    if (r.functor_is("envelope") && r.args()[2].args()[0].atom_is(victim))
      ++late_sources;
    if (r.functor_is("deliver") && r.args()[1].args()[0].atom_is(victim))
      ++late_delivers;
    if (r.functor_is("offlineFlush") && r.args()[0].args()[0].atom_is(victim))
      ++late_delivers;
  }

  auto cert = net.certificate_of(victim);
  int refused = 0, attempts = 20;
  if (cert) {
    for (int i = 0; i < attempts; ++i) {
      auto out = net.readopt_certificate(*cert);
      if (!out.accepted && out.reason.find("blacklisted") != std::string::npos)
        ++refused;
    }
  }
  std::string audit = suites_verdict(net.trace(), {"revocation", "trust", "custody"});
  bool ok = quit_at < t.records().size() && late_sources == 0 && late_delivers == 0 &&
            refused == attempts && audit.empty();
  std::printf(
      "2. revocation end-to-end: %s (post-quit sources=%lld delivers=%lld, "
      "re-adoption refused %d/%d)%s%s\n",
      ok ? "PASS" : "FAIL", late_sources, late_delivers, refused, attempts,
      audit.empty() ? "" : " audit: ", audit.c_str());
  return ok;
}

// ---- criterion 3: group isolation under random traffic ------------------

bool criterion3() {
  long long delivered = 0, violations = 0, sent = 0;
  std::string audit;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    NetConfig cfg;
    cfg.seed = seed;
    cfg.capacity = 64;
    SimNetwork net(cfg, {load_law_file(testutil::repo_path("laws/be.law"))});
    std::mt19937 gen(static_cast<unsigned>(900 + seed));
    std::uniform_int_distribution<int> pick_group(1, 5);
    std::uniform_int_distribution<int> pick_member(0, 49);
    std::map<AgentName, std::set<std::string>> groups;
    for (int i = 0; i < 50; ++i) {
      AgentName name = "u" + std::to_string(i);
      std::set<std::string> gs{"g" + std::to_string(pick_group(gen))};
      if (gen() % 2) gs.insert("g" + std::to_string(pick_group(gen)));
      std::vector<Term> attrs;
      for (const std::string& g : gs) attrs.push_back(parse_term("group(" + g + ")"));
      net.adopt(name, attrs);
      groups[name] = gs;
    }
    for (int k = 0; k < 500; ++k) {
      int a = pick_member(gen), b = pick_member(gen);
      if (a == b) b = (b + 1) % 50;
      net.member("u" + std::to_string(a))
          ->direct_message("u" + std::to_string(b), "#chat#",
                           "note " + std::to_string(k));
      ++sent;
    }
    net.drain();
    for (const Del& d : delivers(net.trace())) {
      if (!d.msg.functor_is("msg")) continue;
      ++delivered;
      const auto& sg = groups[d.from];
      const auto& rg = groups[d.agent];
      bool shares = false;
      for (const std::string& g : sg) shares = shares || rg.count(g);
      if (!shares) ++violations;
    }
    if (audit.empty()) audit = suites_verdict(net.trace(), {"group_isolation"});
  }
  bool ok = violations == 0 && delivered > 0 && sent == 5000 && audit.empty();
  std::printf(
      "3. group isolation: %s (%lld/%lld dms delivered across 10 seeds, %lld "
      "violations)%s%s\n",
      ok ? "PASS" : "FAIL", delivered, sent, violations,
      audit.empty() ? "" : " audit: ", audit.c_str());
  return ok;
}

// ---- criterion 4: filter soundness --------------------------------------

bool criterion4() {
  NetConfig cfg;
  cfg.seed = 404;
  cfg.capacity = 64;
  SimNetwork net(cfg, {load_law_file(testutil::repo_path("laws/be.law"))});
  std::mt19937 gen(777);
  std::uniform_int_distribution<int> tag(1, 6);

  std::map<AgentName, std::set<std::string>> member_groups;
  std::map<AgentName, std::set<std::string>> publisher_filters;

  std::vector<AgentName> pubs, subs;
  for (int i = 0; i < 12; ++i) {
    AgentName p = "pub" + std::to_string(i);
    std::set<std::string> gs{"all", "t" + std::to_string(tag(gen))};
    std::vector<Term> attrs;
    for (const std::string& g : gs) attrs.push_back(parse_term("group(" + g + ")"));
    net.adopt(p, attrs);
    member_groups[p] = gs;
    std::set<std::string> fs{"t" + std::to_string(tag(gen))};
    if (gen() % 2) fs.insert("t" + std::to_string(tag(gen)));
    for (const std::string& f : fs)
      net.member(p)->add_filter(parse_term("group(" + f + ")"));
    publisher_filters[p] = fs;
    pubs.push_back(p);
  }
  for (int i = 0; i < 18; ++i) {
    AgentName s = "sub" + std::to_string(i);
    std::set<std::string> gs{"all"};
    if (gen() % 3) gs.insert("t" + std::to_string(tag(gen)));
    if (gen() % 3 == 0) gs.insert("t" + std::to_string(tag(gen)));
    std::vector<Term> attrs;
    for (const std::string& g : gs) attrs.push_back(parse_term("group(" + g + ")"));
    net.adopt(s, attrs);
    member_groups[s] = gs;
    subs.push_back(s);
  }
  net.drain();
  long long attempts = 0;
  for (const AgentName& s : subs)
    for (const AgentName& p : pubs) {
      net.member(s)->subscribe_to(p);
      ++attempts;
    }
  net.drain();

  long long enrolled = 0, refusals = 0, unsound = 0;
  for (const AgentName& p : pubs) {
    for (const Term& attr : final_attrs(net.trace(), p)) {
      if (!attr.functor_is("subList") || attr.arity() != 2) continue;
      ++enrolled;
      const AgentName who = attr.args()[1].symbol();
      for (const std::string& f : publisher_filters[p])
        if (member_groups[who].count(f)) ++unsound;
    }
  }
  for (const Del& d : delivers(net.trace()))
    refusals += d.msg.atom_is("subscribeNotAllowed");
  std::string audit = suites_verdict(net.trace(), {"filter_soundness", "custody"});
  bool ok = attempts >= 200 && unsound == 0 && enrolled > 0 && refusals > 0 &&
            audit.empty();
  std::printf(
      "4. filter soundness: %s (%lld attempts, %lld enrollments, %lld refusals, "
      "%lld unsound)%s%s\n",
      ok ? "PASS" : "FAIL", attempts, enrolled, refusals, unsound,
      audit.empty() ? "" : " audit: ", audit.c_str());
  return ok;
}

// ---- criterion 5: dual mediation and law-hash trust ----------------------

bool criterion5() {
  const char* fixtures[] = {"fixtures/basic_pubsub.osc", "fixtures/revocation.osc",
                            "fixtures/two_community.osc", "fixtures/search_ring.osc",
                            "fixtures/groups_dm.osc"};
  std::string first_fail;
  long long cross = -1;
  for (const char* f : fixtures) {
    Trace t = run_scenario(load_scenario_file(testutil::repo_path(f)));
    std::string err = suites_verdict(t, {"dual_mediation", "trust", "serial"});
    if (!err.empty() && first_fail.empty())
      first_fail = std::string(f) + ": " + err;
    if (std::string(f).find("two_community") == std::string::npos) continue;

    std::map<AgentName, long long> community;
    std::map<long long, std::pair<AgentName, AgentName>> route;
    cross = 0;
    for (const Term& r : t.records()) {
      if (r.functor_is("adopted") && r.args()[3].functor_is("accepted"))
        community[r.args()[0].args()[0].symbol()] = r.args()[1].args()[0].value();
      if (r.functor_is("envelope"))
        route[r.args()[0].value()] = {r.args()[2].args()[0].symbol(),
                                      r.args()[3].args()[0].symbol()};
      if (r.functor_is("hop") && r.args()[1].functor_is("delivered")) {
        auto [src, dst] = route[r.args()[0].value()];
        if (community.count(src) && community.count(dst) &&
            community[src] != community[dst])
          ++cross;
      }
    }
  }
  bool ok = first_fail.empty() && cross == 0;
  std::printf("5. dual mediation and trust: %s (cross-community deliveries: %lld)%s%s\n",
              ok ? "PASS" : "FAIL", cross, first_fail.empty() ? "" : " ",
              first_fail.c_str());
  return ok;
}

// ---- criterion 6: search equals breadth-first reachability ---------------

bool criterion6() {
  std::mt19937 gen(606);
  int equal_cases = 0, total_cases = 0;
  long long subset_violations = 0;
  std::string first_fail;
  for (int g = 0; g < 25; ++g) {
    std::uniform_int_distribution<int> size_pick(4, 30);
    const int n = size_pick(gen);
    NetConfig cfg;
    cfg.seed = 600 + static_cast<std::uint64_t>(g);
    cfg.capacity = 40;
    SimNetwork net(cfg, {load_law_file(testutil::repo_path("laws/be.law"))});
    for (int i = 0; i < n; ++i)
      net.adopt("v" + std::to_string(i), {parse_term("group(all)")});
    std::uniform_int_distribution<int> coin(0, 99);
    int pct = std::max(8, 240 / n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(gen) < pct)
          net.member("v" + std::to_string(i))->subscribe_to("v" + std::to_string(j));
    net.drain();
    for (int i = 0; i < n; ++i)
      net.member("v" + std::to_string(i))->publish("#find#", "needle");
    net.drain();

    auto graph = net.subscription_graph();
    std::uniform_int_distribution<int> origin_pick(0, n - 1);
    AgentName origin = "v" + std::to_string(origin_pick(gen));
    Term pred = parse_term("post(#find#, B, I)");

    for (long long ttl = 0; ttl <= 3; ++ttl) {
      Term qid = net.start_search(origin, pred, ttl, n);
      net.drain();
      const SearchState* s = net.member(origin)->search_result(qid);
      std::set<AgentName> got;
      if (s)
        for (const auto& [who, hit] : s->hits) got.insert(who);
      ++total_cases;
      if (got == bfs_reachable(graph, origin, ttl)) {
        ++equal_cases;
      } else if (first_fail.empty()) {
        first_fail = "graph " + std::to_string(g) + " ttl " + std::to_string(ttl);
      }
    }
    long long thr = 1 + static_cast<long long>(gen() % 2);
    Term qid = net.start_search(origin, pred, 2, thr);
    net.drain();
    const SearchState* s = net.member(origin)->search_result(qid);
    auto bound = bfs_reachable(graph, origin, 2);
    if (s)
      for (const auto& [who, hit] : s->hits) subset_violations += !bound.count(who);
  }
  bool ok = equal_cases == 100 && total_cases == 100 && subset_violations == 0;
  std::printf(
      "6. search vs reachability oracle: %s (%d/%d exact, %lld out-of-bound "
      "constrained hits)%s%s\n",
      ok ? "PASS" : "FAIL", equal_cases, total_cases, subset_violations,
      first_fail.empty() ? "" : " first mismatch: ", first_fail.c_str());
  return ok;
}

// ---- criterion 7: 200-member scale run -----------------------------------

bool criterion7() {
  std::mt19937 gen(707);
  std::ostringstream sc;
  sc << "scenario scale_community\nseed 70\ncapacity 256\nlaw \"laws/be.law\"\n";
  sc << "adopt m0 [role(manager), group(all), group(g1)]\n";
  for (int i = 1; i < 200; ++i)
    sc << "adopt m" << i << " [group(all), group(g" << 1 + gen() % 8 << ")]\n";
  std::set<std::pair<int, int>> edges;
  while (edges.size() < 400) {
    int a = static_cast<int>(gen() % 200), b = static_cast<int>(gen() % 200);
    if (a == b) continue;
    if (edges.emplace(a, b).second)
      sc << "subscribe m" << a << " m" << b << "\n";
  }
  sc << "drain\n";
  for (int k = 0; k < 50; ++k) {
    int who = static_cast<int>(gen() % 200);
    const char* tag = who == 0 && k % 10 == 0 ? "#management#" : "#social#";
    sc << "publish m" << who << " " << tag << " \"post number " << k << "\"\n";
  }
  sc << "drain\n";
  for (int s = 0; s < 3; ++s)
    sc << "search m" << gen() % 200 << " post(#social#, B, I) 2 3\n";
  sc << "drain\nrevoke m0 m150\ndrain\n";

  auto t0 = Clock::now();
  Scenario scenario = parse_scenario(sc.str(), testutil::repo_path(""));
  Trace t = run_scenario(scenario);
  std::string audit = suites_verdict(t);
  double dt = seconds_since(t0);
  bool ok = dt < 60.0 && audit.empty() && count_records(t, "quit") == 1;
  std::printf("7. 200-member scale run: %s (%zu records in %.2fs)%s%s\n",
              ok ? "PASS" : "FAIL", t.records().size(), dt,
              audit.empty() ? "" : " audit: ", audit.c_str());
  return ok;
}

// ---- criterion 8: replay determinism --------------------------------------

bool criterion8() {
  const char* fixtures[] = {"fixtures/basic_pubsub.osc", "fixtures/revocation.osc",
                            "fixtures/two_community.osc", "fixtures/search_ring.osc",
                            "fixtures/groups_dm.osc"};
  int stable = 0, total = 0;
  for (const char* f : fixtures) {
    ++total;
    Scenario sc = load_scenario_file(testutil::repo_path(f));
    std::string first = run_scenario(sc).serialize();
    bool same = true;
    for (int k = 0; k < 2; ++k) same = same && run_scenario(sc).serialize() == first;
    stable += same;
  }
  bool ok = stable == total && total == 5;
  std::printf("8. replay determinism: %s (%d/%d scenarios byte-identical over 3 runs)\n",
              ok ? "PASS" : "FAIL", stable, total);
  return ok;
}

}  // namespace

int main() {
  int failed = 0;
  failed += !criterion1();
  failed += !criterion2();
  failed += !criterion3();
  failed += !criterion4();
  failed += !criterion5();
  failed += !criterion6();
  failed += !criterion7();
  failed += !criterion8();
  if (failed == 0)
    std::printf("acceptance: all 8 criteria PASS\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failed);
  return failed;
}
