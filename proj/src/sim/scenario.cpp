#include "osc/sim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "osc/law_parser.hpp"
#include "osc/lexer.hpp"

namespace osc::sim {

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || path.front() == '/' || base_dir.empty()) return path;
  return base_dir + "/" + path;
}

long long read_int(Lexer& lx, const char* what) {
  return lx.expect(TokenType::Int, what).number;
}

std::string read_name(Lexer& lx, const char* what) {
  return lx.expect(TokenType::Ident, what).text;
}

std::string read_str(Lexer& lx, const char* what) {
  return lx.expect(TokenType::Str, what).text;
}

std::string read_tag(Lexer& lx) {
  return lx.expect(TokenType::Tag, "message type tag").text;
}

Term read_term(Lexer& lx) { return parse_term_from(lx, TermLimits{32}); }

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& base_dir) {
  Scenario sc;
  Lexer lx(text);
  std::set<std::string> known;

  auto want_known = [&](const std::string& name, const Token& at) {
    if (!known.count(name))
      throw ParseError("step references agent adopted nowhere above: " + name, at.line,
                       at.col);
  };

  while (!lx.done()) {
    Token verb = lx.expect(TokenType::Ident, "step or directive");
    if (verb.text == "scenario") {
      sc.name = read_name(lx, "scenario name");
    } else if (verb.text == "seed") {
      sc.seed = static_cast<std::uint64_t>(read_int(lx, "seed"));
    } else if (verb.text == "capacity") {
      sc.capacity = static_cast<std::size_t>(read_int(lx, "capacity"));
    } else if (verb.text == "cakey") {
      sc.ca_key = read_str(lx, "CA key");
    } else if (verb.text == "dbprefix") {
      sc.db_prefixes.push_back(read_str(lx, "db prefix"));
    } else if (verb.text == "transport") {
      std::string t = read_name(lx, "transport");
      if (t == "sim")
        sc.transport = Transport::Sim;
      else if (t == "socket")
        sc.transport = Transport::Socket;
      else
        throw ParseError("transport must be sim or socket", verb.line, verb.col);
    } else if (verb.text == "law") {
      sc.law_files.push_back(resolve(base_dir, read_str(lx, "law file")));
    } else {
      Step st;
      if (verb.text == "adopt" || verb.text == "adopt2") {
        st.kind = Step::Kind::Adopt;
        st.community = verb.text == "adopt2" ? 1 : 0;
        st.a = read_name(lx, "agent");
        st.term = read_term(lx);
        if (!st.term.is_list())
          throw ParseError("adopt wants a [attr, ...] list", verb.line, verb.col);
        if (known.count(st.a))
          throw ParseError("agent adopted twice: " + st.a, verb.line, verb.col);
        known.insert(st.a);
      } else if (verb.text == "readopt") {
        st.kind = Step::Kind::Readopt;
        st.a = read_name(lx, "agent");
        want_known(st.a, verb);
      } else if (verb.text == "certify") {
        st.kind = Step::Kind::Certify;
        st.a = read_name(lx, "agent");
        want_known(st.a, verb);
        st.term = read_term(lx);
        if (!st.term.is_list())
          throw ParseError("certify wants a [attr, ...] list", verb.line, verb.col);
      } else if (verb.text == "addprofile" || verb.text == "updateprofile" ||
                 verb.text == "addfilter") {
        st.kind = verb.text == "addprofile"    ? Step::Kind::AddProfile
                  : verb.text == "addfilter"   ? Step::Kind::AddFilter
                                               : Step::Kind::UpdateProfile;
        st.a = read_name(lx, "agent");
        want_known(st.a, verb);
        st.term = read_term(lx);
      } else if (verb.text == "publish") {
        st.kind = Step::Kind::Publish;
        st.a = read_name(lx, "agent");
        want_known(st.a, verb);
        st.tag = read_tag(lx);
        st.body = read_str(lx, "post body");
      } else if (verb.text == "subscribe") {
        st.kind = Step::Kind::Subscribe;
        st.a = read_name(lx, "subscriber");
        st.b = read_name(lx, "publisher");
        want_known(st.a, verb);
        want_known(st.b, verb);
      } else if (verb.text == "dm") {
        st.kind = Step::Kind::Dm;
        st.a = read_name(lx, "sender");
        st.b = read_name(lx, "receiver");
        want_known(st.a, verb);
        want_known(st.b, verb);
        st.tag = read_tag(lx);
        st.body = read_str(lx, "message body");
      } else if (verb.text == "dbop") {
        st.kind = Step::Kind::DbOp;
        st.a = read_name(lx, "agent");
        want_known(st.a, verb);
        st.term = read_term(lx);
      } else if (verb.text == "search") {
        st.kind = Step::Kind::Search;
        st.a = read_name(lx, "agent");
        want_known(st.a, verb);
        st.term = read_term(lx);
        st.ttl = read_int(lx, "ttl");
        st.threshold = read_int(lx, "threshold");
        if (st.ttl < 0 || st.threshold < 0)
          throw ParseError("search wants non-negative ttl and threshold", verb.line,
                           verb.col);
      } else if (verb.text == "revoke") {
        st.kind = Step::Kind::Revoke;
        st.a = read_name(lx, "manager");
        st.b = read_name(lx, "target");
        want_known(st.a, verb);
        want_known(st.b, verb);
      } else if (verb.text == "detach" || verb.text == "attach") {
        st.kind = verb.text == "detach" ? Step::Kind::Detach : Step::Kind::Attach;
        st.a = read_name(lx, "agent");
        want_known(st.a, verb);
      } else if (verb.text == "drain") {
        st.kind = Step::Kind::Drain;
      } else {
        throw ParseError("unknown step: " + verb.text, verb.line, verb.col);
      }
      sc.steps.push_back(std::move(st));
    }
  }
  if (sc.law_files.empty())
    throw ParseError("scenario declares no law", 1, 1);
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string base;
  std::size_t slash = path.find_last_of('/');
  if (slash != std::string::npos) base = path.substr(0, slash);
  return parse_scenario(buf.str(), base);
}

Trace run_scenario(const Scenario& sc, std::optional<std::uint64_t> seed_override,
                   std::optional<Transport> transport_override) {
  NetConfig cfg;
  cfg.seed = seed_override.value_or(sc.seed);
  cfg.capacity = sc.capacity;
  cfg.ca_key = sc.ca_key;
  if (!sc.db_prefixes.empty()) cfg.db_prefixes = sc.db_prefixes;
  cfg.transport = transport_override.value_or(sc.transport);

  std::vector<std::shared_ptr<const Law>> laws;
  for (const std::string& f : sc.law_files) laws.push_back(load_law_file(f));
  SimNetwork net(cfg, std::move(laws));

  auto actor = [&](const std::string& name) -> Member& {
    Member* m = net.member(name);
    if (!m) throw std::runtime_error("step addresses an agent that was never admitted: " +
                                     name);
    return *m;
  };

  for (const Step& st : sc.steps) {
    switch (st.kind) {
      case Step::Kind::Adopt: {
        std::vector<Term> attrs(st.term.args().begin(), st.term.args().end());
        net.adopt(st.a, attrs, st.community);
        break;
      }
      case Step::Kind::Readopt: {
        auto cert = net.certificate_of(st.a);
        if (!cert) throw std::runtime_error("readopt: no archived certificate: " + st.a);
        net.readopt_certificate(*cert, st.community);
        break;
      }
      case Step::Kind::Certify: {
        std::vector<Term> attrs(st.term.args().begin(), st.term.args().end());
        net.certify(st.a, attrs);
        break;
      }
      case Step::Kind::AddProfile:
        actor(st.a).add_profile_attribute(st.term);
        break;
      case Step::Kind::UpdateProfile:
        actor(st.a).update_profile_attribute(st.term);
        break;
      case Step::Kind::AddFilter:
        actor(st.a).add_filter(st.term);
        break;
      case Step::Kind::Publish:
        actor(st.a).publish(st.tag, st.body);
        break;
      case Step::Kind::Subscribe:
        actor(st.a).subscribe_to(st.b);
        break;
      case Step::Kind::Dm:
        actor(st.a).direct_message(st.b, st.tag, st.body);
        break;
      case Step::Kind::DbOp:
        actor(st.a).db_request(st.term);
        break;
      case Step::Kind::Search:
        net.start_search(st.a, st.term, st.ttl, st.threshold);
        break;
      case Step::Kind::Revoke:
        actor(st.a).revoke(st.b);
        break;
      case Step::Kind::Detach:
        net.detach_actor(st.a);
        break;
      case Step::Kind::Attach:
        net.attach_actor(st.a);
        break;
      case Step::Kind::Drain:
        net.drain();
        break;
    }
  }
  if (sc.steps.empty() || sc.steps.back().kind != Step::Kind::Drain) net.drain();
  return std::move(net.trace());
}

}  // namespace osc::sim
