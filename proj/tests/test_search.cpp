#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "osc/law_parser.hpp"
#include "osc/search.hpp"
#include "osc/sim/network.hpp"
#include "util.hpp"

using namespace osc;

namespace {

using Sent = std::vector<std::pair<AgentName, Term>>;

struct Rig {
  Sent sent;
  std::set<AgentName> peers;
  SearchAgent agent;

  explicit Rig(AgentName self, std::set<AgentName> neighbors = {})
      : peers(std::move(neighbors)),
        agent(std::move(self),
              {[this](const AgentName& t, const Term& m) { sent.emplace_back(t, m); },
               [this] { return peers; }}) {}
};

Term pred() { return parse_term("post(#note#, B, I)"); }

Sent queries_only(const Sent& s) {
  Sent out;
  for (const auto& [t, m] : s)
    if (m.functor_is("query")) out.emplace_back(t, m);
  return out;
}

sim::SimNetwork make_net(std::uint64_t seed = 7) {
  sim::NetConfig cfg;
  cfg.seed = seed;
  cfg.capacity = 64;
  return sim::SimNetwork(cfg, {load_law_file(testutil::repo_path("laws/be.law"))});
}

void admit_all(sim::SimNetwork& net, int n) {
  for (int i = 0; i < n; ++i) {
    auto out = net.adopt("n" + std::to_string(i), {parse_term("group(all)")});
    REQUIRE(out.accepted);
  }
}

void connect(sim::SimNetwork& net, const AgentName& a, const AgentName& b) {
  net.member(a)->subscribe_to(b);
}

std::set<AgentName> contributors(const SearchState* s) {
  REQUIRE(s != nullptr);
  std::set<AgentName> out;
  for (const auto& [who, hit] : s->hits) {
    CHECK_FALSE(hit.post_ids.empty());
    out.insert(who);
  }
  return out;
}

}  // namespace

TEST_CASE("reachability oracle basics") {
  std::map<AgentName, std::set<AgentName>> g;
  CHECK(bfs_reachable(g, "a", 3) == std::set<AgentName>{"a"});

  g = {{"a", {"b"}}, {"b", {"a", "c"}}, {"c", {"b"}}};
  CHECK(bfs_reachable(g, "a", 0) == std::set<AgentName>{"a"});
  CHECK(bfs_reachable(g, "a", 1) == std::set<AgentName>{"a", "b"});
  CHECK(bfs_reachable(g, "a", 2) == std::set<AgentName>{"a", "b", "c"});
  CHECK(bfs_reachable(g, "a", 9) == std::set<AgentName>{"a", "b", "c"});
}

TEST_CASE("reachability oracle on a fixed seven-node shape") {
  // hub h with spokes s1..s3; chain h - c1 - c2 - c3
  std::map<AgentName, std::set<AgentName>> g{
      {"h", {"s1", "s2", "s3", "c1"}}, {"s1", {"h"}},      {"s2", {"h"}},
      {"s3", {"h"}},                   {"c1", {"h", "c2"}}, {"c2", {"c1", "c3"}},
      {"c3", {"c2"}}};
  CHECK(bfs_reachable(g, "h", 1) ==
        std::set<AgentName>{"h", "s1", "s2", "s3", "c1"});
  CHECK(bfs_reachable(g, "c3", 2) == std::set<AgentName>{"c3", "c2", "c1"});
  CHECK(bfs_reachable(g, "c3", 3) == std::set<AgentName>{"c3", "c2", "c1", "h"});
  CHECK(bfs_reachable(g, "s1", 2).count("c1") == 1);
  CHECK(bfs_reachable(g, "s1", 2).count("c2") == 0);
}

TEST_CASE("a zero-budget search only reads the local store") {
  Rig rig("a", {"b", "c"});
  rig.agent.initiate(pred(), 0, 3);
  REQUIRE(rig.sent.size() == 1);
  CHECK(rig.sent[0].first == "a");
  CHECK(rig.sent[0].second == parse_term("#db#(read(q(a, 1), post(#note#, B, I)))"));

  Rig starved("a", {"b", "c"});
  starved.agent.initiate(pred(), 5, 0);
  CHECK(starved.sent.size() == 1);
}

TEST_CASE("fan-out picks the smallest neighbours and spends one budget unit") {
  Rig rig("a", {"d", "b", "e", "c"});
  Term qid = rig.agent.initiate(pred(), 2, 2);
  CHECK(qid == parse_term("q(a, 1)"));
  auto qs = queries_only(rig.sent);
  REQUIRE(qs.size() == 2);
  CHECK(qs[0].first == "b");
  CHECK(qs[1].first == "c");
  CHECK(qs[0].second == parse_term("query(q(a, 1), a, post(#note#, B, I), 1, 1, 2)"));
}

TEST_CASE("relaying a query skips the sender and decrements the budget") {
  Rig rig("m", {"a", "n", "z"});
  rig.agent.on_query("z", parse_term("query(q(a, 7), a, post(#note#, B, I), 2, 1, 9)"));
  REQUIRE(rig.sent.size() >= 1);
  CHECK(rig.sent[0].second.functor_is("#db#"));
  auto qs = queries_only(rig.sent);
  REQUIRE(qs.size() == 2);  // a and n; z heard it already, m is itself
  CHECK(qs[0].first == "a");
  CHECK(qs[1].first == "n");
  CHECK(qs[0].second == parse_term("query(q(a, 7), a, post(#note#, B, I), 1, 2, 9)"));
}

TEST_CASE("a query arriving with no budget left is answered but not relayed") {
  Rig rig("m", {"x", "y"});
  rig.agent.on_query("x", parse_term("query(q(a, 1), a, post(#note#, B, I), 0, 2, 9)"));
  REQUIRE(rig.sent.size() == 1);
  CHECK(rig.sent[0].second.functor_is("#db#"));
}

TEST_CASE("a repeated query id is ignored entirely") {
  Rig rig("m", {"x", "y"});
  Term q = parse_term("query(q(a, 4), a, post(#note#, B, I), 3, 1, 9)");
  rig.agent.on_query("x", q);
  std::size_t first = rig.sent.size();
  rig.agent.on_query("y", q);
  rig.agent.on_query("x", q);
  CHECK(rig.sent.size() == first);
}

TEST_CASE("store results turn into hits only when something matched") {
  Rig relay("m", {});
  relay.agent.on_query("x", parse_term("query(q(a, 2), a, post(#note#, B, I), 0, 2, 9)"));
  relay.sent.clear();

  SUBCASE("empty result stays silent") {
    relay.agent.on_db_result(parse_term("readResult(q(a, 2), list())"));
    CHECK(relay.sent.empty());
  }
  SUBCASE("a match travels straight to the origin") {
    relay.agent.on_db_result(parse_term(
        "readResult(q(a, 2), list(post(#note#, \"b\", pid(m, 1)), post(#note#, \"c\", "
        "pid(m, 2))))"));
    REQUIRE(relay.sent.size() == 1);
    CHECK(relay.sent[0].first == "a");
    CHECK(relay.sent[0].second ==
          parse_term("hit(q(a, 2), m, 2, list(pid(m, 1), pid(m, 2)))"));
  }
  SUBCASE("an unknown correlation tag is not ours to answer") {
    CHECK_FALSE(relay.agent.handles_result_tag(parse_term("q(zz, 9)")));
    relay.agent.on_db_result(parse_term("readResult(q(zz, 9), list(post(#note#, \"b\", "
                                        "pid(m, 1))))"));
    CHECK(relay.sent.empty());
  }
}

TEST_CASE("the origin aggregates local and remote findings") {
  Rig origin("a", {});
  Term qid = origin.agent.initiate(pred(), 2, 3);
  origin.agent.on_db_result(
      parse_term("readResult(q(a, 1), list(post(#note#, \"mine\", pid(a, 3))))"));
  origin.agent.on_hit(parse_term("hit(q(a, 1), m, 2, list(pid(m, 1)))"));
  origin.agent.on_hit(parse_term("hit(q(other, 5), z, 1, list(pid(z, 1)))"));  // not ours
  origin.agent.on_hit(parse_term("hit(q(a, 1), bad, oops, list(pid(b, 1)))"));  // malformed

  const SearchState* s = origin.agent.result(qid);
  REQUIRE(s != nullptr);
  CHECK(s->hits.size() == 2);
  CHECK(s->hits.at("a").hops == 0);
  CHECK(s->hits.at("a").post_ids == std::vector<Term>{parse_term("pid(a, 3)")});
  CHECK(s->hits.at("m").hops == 2);
  CHECK(origin.agent.result(parse_term("q(a, 99)")) == nullptr);
}

TEST_CASE("five-member ring: a two-hop search reaches everyone") {
  auto net = make_net(11);
  admit_all(net, 5);
  for (int i = 0; i < 5; ++i) connect(net, "n" + std::to_string(i),
                                      "n" + std::to_string((i + 1) % 5));
  net.drain();
  for (int i = 0; i < 5; ++i)
    net.member("n" + std::to_string(i))->publish("#note#", "ring note");
  net.drain();

  Term qid = net.start_search("n0", pred(), 2, 5);
  net.drain();
  auto got = contributors(net.member("n0")->search_result(qid));
  CHECK(got == std::set<AgentName>{"n0", "n1", "n2", "n3", "n4"});

  Term local = net.start_search("n0", pred(), 0, 5);
  net.drain();
  CHECK(contributors(net.member("n0")->search_result(local)) ==
        std::set<AgentName>{"n0"});

  Term narrow = net.start_search("n0", pred(), 5, 0);
  net.drain();
  CHECK(contributors(net.member("n0")->search_result(narrow)) ==
        std::set<AgentName>{"n0"});
}

TEST_CASE("random graph, generous threshold: findings equal graph reachability") {
  auto net = make_net(23);
  const int n = 20;
  admit_all(net, n);
  std::mt19937 gen(4242);
  std::uniform_int_distribution<int> coin(0, 99);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(gen) < 14) connect(net, "n" + std::to_string(i), "n" + std::to_string(j));
  net.drain();
  for (int i = 0; i < n; ++i)
    net.member("n" + std::to_string(i))->publish("#note#", "payload");
  net.drain();

  auto graph = net.subscription_graph();
  for (long long ttl : {0, 1, 2, 3}) {
    for (const AgentName origin : {"n0", "n7", "n13"}) {
      Term qid = net.start_search(origin, pred(), ttl, n);
      net.drain();
      auto got = contributors(net.member(origin)->search_result(qid));
      CHECK(got == bfs_reachable(graph, origin, ttl));
    }
  }
}

TEST_CASE("random graph, tight threshold: findings stay within reachability") {
  auto net = make_net(29);
  const int n = 12;
  admit_all(net, n);
  std::mt19937 gen(99);
  std::uniform_int_distribution<int> coin(0, 99);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(gen) < 25) connect(net, "n" + std::to_string(i), "n" + std::to_string(j));
  net.drain();
  for (int i = 0; i < n; ++i)
    net.member("n" + std::to_string(i))->publish("#note#", "payload");
  net.drain();

  auto graph = net.subscription_graph();
  for (long long thr : {1, 2}) {
    Term qid = net.start_search("n2", pred(), 2, thr);
    net.drain();
    auto got = contributors(net.member("n2")->search_result(qid));
    auto bound = bfs_reachable(graph, "n2", 2);
    for (const AgentName& who : got) CHECK(bound.count(who) == 1);
    CHECK(got.count("n2") == 1);
  }
}
