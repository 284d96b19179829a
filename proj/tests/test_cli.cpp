#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

using Json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(POSETLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.stdout_text.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WEXITSTATUS(status);
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

struct Fixture {
  Fixture() {
    write_file("cli_two_chain.json", R"({"elements":["a","b"],"le":[["a","b"]]})");
    write_file("cli_two_anti.json", R"({"elements":["p","q"],"le":[]})");
    write_file("cli_four_chain.json",
               R"({"elements":["a","b","c","d"],)"
               R"("le":[["a","b"],["b","c"],["c","d"]]})");
    write_file("cli_five_chain.json",
               R"({"elements":["a","b","c","d","e"],)"
               R"("le":[["a","b"],["b","c"],["c","d"],["d","e"]]})");
    write_file("cli_cycle.json",
               R"({"elements":["a","b"],"le":[["a","b"],["b","a"]]})");
    write_file("cli_bad.json", "{nope");
  }
  ~Fixture() {
    for (const char* f :
         {"cli_two_chain.json", "cli_two_anti.json", "cli_four_chain.json",
          "cli_five_chain.json", "cli_cycle.json", "cli_bad.json",
          "cli_game.json"})
      std::remove(f);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "eval exit codes and report shape") {
  RunResult truthy = run(
      "eval --poset cli_two_chain.json --formula \"exists t . forall u . u <= t\"");
  CHECK(truthy.exit_code == 0);
  Json report = Json::parse(truthy.stdout_text);
  CHECK(report["command"] == "eval");
  CHECK(report["results"]["value"] == true);
  CHECK(report.contains("inputs_digest"));

  RunResult falsy = run(
      "eval --poset cli_two_anti.json --formula \"exists t . forall u . u <= t\"");
  CHECK(falsy.exit_code == 1);

  RunResult parse_err = run("eval --poset cli_bad.json --formula \"x = x\"");
  CHECK(parse_err.exit_code == 2);

  RunResult cyclic = run("eval --poset cli_cycle.json --formula \"x = x\"");
  CHECK(cyclic.exit_code == 3);
  Json cyc = Json::parse(cyclic.stdout_text);
  CHECK(cyc["error"].get<std::string>().find("antisymmetry") != std::string::npos);

  RunResult unassigned = run("eval --poset cli_two_chain.json --formula \"x = x\"");
  CHECK(unassigned.exit_code == 3);

  RunResult assigned = run(
      "eval --poset cli_two_chain.json --formula \"x <= y\" "
      "--assign \"{\\\"x\\\":\\\"a\\\",\\\"y\\\":\\\"b\\\"}\"");
  CHECK(assigned.exit_code == 0);
}

TEST_CASE_FIXTURE(Fixture, "deterministic output") {
  std::string cmd =
      "decompose --poset cli_four_chain.json --mode fld1 --emit-formulas";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);

  RunResult v1 = run("verify --suite pi-union --bound 3 --seed 5 --samples 8");
  RunResult v2 = run("verify --suite pi-union --bound 3 --seed 5 --samples 8");
  CHECK(v1.stdout_text == v2.stdout_text);
}

TEST_CASE_FIXTURE(Fixture, "decompose and transfer") {
  RunResult dec = run("decompose --poset cli_four_chain.json --mode fld1");
  CHECK(dec.exit_code == 0);
  Json report = Json::parse(dec.stdout_text);
  CHECK(report["results"]["count"] == 8);

  RunResult anti = run("decompose --poset cli_two_anti.json --mode fld1");
  Json anti_report = Json::parse(anti.stdout_text);
  CHECK(anti_report["results"]["count"] == 1);

  RunResult moved = run(
      "decompose --poset cli_four_chain.json --mode fld1 "
      "--transfer cli_five_chain.json");
  CHECK(moved.exit_code == 0);
  Json m = Json::parse(moved.stdout_text);
  bool any = false;
  for (const auto& t : m["results"]["transfers"])
    if (t["status"] == "transferred") any = true;
  CHECK(any);
}

TEST_CASE_FIXTURE(Fixture, "ef games emit replayable traces") {
  RunResult game = run("ef --poset cli_four_chain.json --poset cli_five_chain.json --k 2");
  CHECK(game.exit_code == 0);  // the chains are 2-round equivalent
  Json g = Json::parse(game.stdout_text);
  CHECK(g["results"]["winner"] == "II");
  write_file("cli_game.json", g["results"].dump());

  RunResult replay = run(
      "ef --poset cli_four_chain.json --poset cli_five_chain.json "
      "--replay cli_game.json");
  CHECK(replay.exit_code == 0);

  RunResult losing = run("ef --poset cli_two_chain.json --poset cli_five_chain.json --k 3");
  CHECK(losing.exit_code == 1);
}

TEST_CASE_FIXTURE(Fixture, "classify and closure") {
  RunResult all = run("classify --poset cli_four_chain.json");
  CHECK(all.exit_code == 0);
  Json c = Json::parse(all.stdout_text);
  CHECK(c["results"]["linear"] == true);

  CHECK(run("classify --poset cli_four_chain.json --class 'linear&has-min'").exit_code == 0);
  CHECK(run("classify --poset cli_two_anti.json --class linear").exit_code == 1);
  CHECK(run("classify --poset cli_two_anti.json --class nope").exit_code == 2);

  RunResult closure = run("closure --class singleton-only --operator sigma --bound 4");
  CHECK(closure.exit_code == 0);
  Json cl = Json::parse(closure.stdout_text);
  size_t total = 0;
  for (const auto& stage : cl["results"]["stages"]) total += stage.size();
  CHECK(total == 24);

  CHECK(run("closure --class singleton-only --operator sigma --bound 99").exit_code == 4);

  RunResult member = run(
      "closure --class singleton-only --operator sigma --bound 4 "
      "--member cli_four_chain.json");
  CHECK(member.exit_code == 0);
}

TEST_CASE_FIXTURE(Fixture, "verify suites") {
  RunResult ok = run("verify --suite ef-chains --k 2");
  CHECK(ok.exit_code == 0);
  Json report = Json::parse(ok.stdout_text);
  CHECK(report["results"]["pass"] == true);

  CHECK(run("verify --suite not-a-suite").exit_code == 2);
}

TEST_CASE_FIXTURE(Fixture, "relativize and canon commands") {
  RunResult rel = run(
      "relativize --formula \"forall u . exists t . u <= t\" "
      "--guard \"v <= w0\" --params w0 --subject v");
  CHECK(rel.exit_code == 0);
  Json r = Json::parse(rel.stdout_text);
  CHECK(r["results"]["formula"].get<std::string>().find("u <= w0") !=
        std::string::npos);

  RunResult canon_a = run("canon --poset cli_two_chain.json");
  RunResult canon_b = run("canon --poset cli_two_anti.json");
  CHECK(canon_a.exit_code == 0);
  CHECK(Json::parse(canon_a.stdout_text)["results"]["canonical"] !=
        Json::parse(canon_b.stdout_text)["results"]["canonical"]);
}
