#include <doctest.h>

#include <json.hpp>

#include "engine.hpp"
#include "glrep.hpp"

using namespace wsck;
using nlohmann::json;

TEST_CASE("exit codes: 0 pass, 2 config error") {
  CHECK(run_command(R"({"command":"axioms","algebra":"W","n":2})").status == 0);
  CHECK(run_command(R"({"command":"axioms","algebra":"W","n":99})").status == 2);
  CHECK(run_command(R"({"command":"nope"})").status == 2);
  CHECK(run_command("not json").status == 2);
  CHECK(run_command(R"({"command":"axioms","algebra":"S","n":2,"b":"1"})")
            .status == 0);
  CHECK(run_command(R"({"command":"axioms","algebra":"Stilde","n":3})")
            .status == 2);
}

TEST_CASE("byte-stable json for a fixed config") {
  std::string cfg = R"({"command":"w1","a":"0","b":"1"})";
  RunResult a = run_command(cfg);
  RunResult b = run_command(cfg);
  CHECK(a.json == b.json);
  CHECK(a.status == 0);
  // keys come out sorted
  json j = json::parse(a.json);
  CHECK(j.contains("command"));
  CHECK(j.contains("checks"));
  CHECK(j.contains("artifacts"));
  CHECK(j.contains("config"));
}

TEST_CASE("classify with a valid user representation") {
  GlRep V = build_standard(2);
  json cfg;
  cfg["command"] = "classify";
  cfg["algebra"] = "W";
  cfg["n"] = 2;
  cfg["rep"] = json::parse(glrep_to_json(V));
  RunResult r = run_command(cfg.dump());
  CHECK(r.status == 0);
  json out = json::parse(r.json);
  CHECK(out["artifacts"]["report"]["nontrivial"] == 0);
}

TEST_CASE("classify rejects an invalid representation with status 2") {
  GlRep V = build_standard(2);
  V.parity[1] = 0;  // break a relation
  json cfg;
  cfg["command"] = "classify";
  cfg["algebra"] = "W";
  cfg["n"] = 2;
  cfg["rep"] = json::parse(glrep_to_json(V));
  CHECK(run_command(cfg.dump()).status == 2);
}

TEST_CASE("classify inventories match the embedded data") {
  RunResult r = run_command(
      R"({"command":"classify","algebra":"W","n":2,"family":"barforms","kmin":0,"kmax":3})");
  CHECK(r.status == 0);
  json j = json::parse(r.json);
  CHECK(j["artifacts"]["inventories"]["barforms_k1"]["count"] == 1);
  CHECK(j["artifacts"]["inventories"]["barforms_k2"]["count"] == 1);

  RunResult rs = run_command(
      R"({"command":"classify","algebra":"S","n":2,"family":"barforms","kmin":1,"kmax":1})");
  CHECK(rs.status == 0);
  json js = json::parse(rs.json);
  CHECK(js["artifacts"]["inventories"]["barforms_k1"]["count"] == 3);

  RunResult rf = run_command(
      R"({"command":"classify","algebra":"S","variant":"full","n":2,"family":"barforms","kmin":1,"kmax":1})");
  json jf = json::parse(rf.json);
  CHECK(jf["artifacts"]["inventories"]["barforms_k1"]["count"] == 2);
}

TEST_CASE("twisted classify keeps inventories") {
  RunResult r = run_command(
      R"({"command":"classify","algebra":"W","n":2,"family":"theta","kmin":1,"kmax":1,"alpha":"-1/2"})");
  CHECK(r.status == 0);
}

TEST_CASE("derham and dual suites pass") {
  CHECK(run_command(R"({"command":"derham","n":2,"jmax":4,"T":4})").status == 0);
  CHECK(run_command(R"({"command":"dual","demo":"rm22"})").status == 0);
}

TEST_CASE("seed determinism") {
  std::string cfg = R"({"command":"axioms","algebra":"W","n":1,"seed":42})";
  CHECK(run_command(cfg).json == run_command(cfg).json);
}

TEST_CASE("CONFKIT_THREADS does not change the report") {
  std::string cfg = R"({"command":"axioms","algebra":"W","n":2})";
  RunResult serial = run_command(cfg);
  setenv("CONFKIT_THREADS", "2", 1);
  RunResult parallel = run_command(cfg);
  unsetenv("CONFKIT_THREADS");
  CHECK(serial.json == parallel.json);
  CHECK(parallel.status == 0);
}
