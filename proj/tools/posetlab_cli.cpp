// posetlab command line: loads posets and formulas, runs the workbench
// operations through the C API, and prints one json report per invocation.
//
// stdout carries machine-readable json only; human-readable rendering and
// timing go to stderr. Exit codes: 0 ok/true, 1 false, 2 parse error,
// 3 semantic error, 4 budget exceeded.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "posetlab/posetlab.h"

namespace {

using Json = nlohmann::ordered_json;

struct CString {
  char* value = nullptr;
  ~CString() { pl_string_free(value); }
  std::string str() const { return value ? std::string(value) : std::string(); }
};

struct Poset {
  pl_poset* value = nullptr;
  ~Poset() { pl_poset_free(value); }
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

int exit_code_of(pl_status s) {
  switch (s) {
    case PL_OK: return 0;
    case PL_ERR_PARSE: return 2;
    case PL_ERR_SEMANTIC: return 3;
    case PL_ERR_BUDGET: return 4;
    default: return 3;
  }
}

void require_ok(pl_status s, const CString& error) {
  if (s == PL_OK) return;
  throw CliError(exit_code_of(s),
                 error.value ? error.str() : std::string("operation failed"));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(2, "cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "@file" pulls the formula text from disk
std::string formula_text(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
  return arg;
}

std::uint64_t fnv1a(const std::string& data, std::uint64_t h) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Report {
  Json body;
  std::vector<std::string> digest_inputs;
  std::string command;

  void input(const std::string& data) { digest_inputs.push_back(data); }

  void print(int exit_code) const {
    Json out;
    out["command"] = command;
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& d : digest_inputs) h = fnv1a(d, h);
    out["inputs_digest"] = hex64(h);
    out["results"] = body;
    std::cout << out.dump() << "\n";
    std::cerr << "exit " << exit_code << "\n";
  }
};

Poset load_poset(Report& report, const std::string& path) {
  std::string text = read_file(path);
  report.input(text);
  Poset p;
  CString err;
  require_ok(pl_poset_from_json(text.c_str(), &p.value, &err.value), err);
  return p;
}

Json parse_payload(const CString& s) { return Json::parse(s.str()); }

// ---------------------------------------------------------------------------

struct CommonOpts {
  std::vector<std::string> posets;
  std::string formula;
  std::string guard;
  std::string params;
  std::string subject = "v";
  std::string assign;
  std::string mode = "fld1";
  std::string klass;
  std::string op = "sigma";
  std::string suite;
  std::string transfer;
  std::string member;
  std::string replay;
  std::string lpins, rpins;
  std::vector<std::string> taus;
  long decomposition = -1;
  std::size_t k = 3;
  std::size_t bound = 4;
  std::size_t budget = 0;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::size_t work_cap = 0;
  bool emit_formulas = false;
  bool json = true;
};

int cmd_eval(const CommonOpts& o) {
  Report report;
  report.command = "eval";
  Poset p = load_poset(report, o.posets.at(0));
  std::string f = formula_text(o.formula);
  report.input(f);
  report.input(o.assign);

  CString freev, err;
  require_ok(pl_formula_free_variables(f.c_str(), &freev.value, &err.value), err);
  int truth = 0;
  CString err2;
  require_ok(pl_eval(p.value, f.c_str(), o.assign.empty() ? "{}" : o.assign.c_str(),
                     &truth, &err2.value),
             err2);
  report.body["value"] = truth == 1;
  report.body["free_variables"] = Json::parse(freev.str());
  int code = truth == 1 ? 0 : 1;
  report.print(code);
  std::cerr << (truth ? "true" : "false") << "\n";
  return code;
}

int cmd_relativize(const CommonOpts& o) {
  Report report;
  report.command = "relativize";
  std::string psi = formula_text(o.formula);
  std::string guard = formula_text(o.guard);
  report.input(psi);
  report.input(guard);
  report.input(o.params);
  report.input(o.subject);
  CString out, err;
  require_ok(pl_relativize(psi.c_str(), guard.c_str(), o.params.c_str(),
                           o.subject.c_str(), &out.value, &err.value),
             err);
  report.body["formula"] = out.str();
  report.print(0);
  std::cerr << out.str() << "\n";
  return 0;
}

int cmd_canon(const CommonOpts& o) {
  Report report;
  report.command = "canon";
  Poset p = load_poset(report, o.posets.at(0));
  CString out, err;
  require_ok(pl_canonical_form(p.value, o.budget, &out.value, &err.value), err);
  report.body["canonical"] = out.str();
  report.print(0);
  std::cerr << out.str() << "\n";
  return 0;
}

int cmd_ef(const CommonOpts& o) {
  Report report;
  report.command = "ef";
  Poset l = load_poset(report, o.posets.at(0));
  Poset r = load_poset(report, o.posets.at(1));
  report.input(o.lpins);
  report.input(o.rpins);

  if (!o.replay.empty()) {
    std::string game = read_file(o.replay);
    report.input(game);
    int valid = 0;
    CString err;
    require_ok(pl_ef_replay(l.value, r.value, o.lpins.c_str(), o.rpins.c_str(),
                            game.c_str(), &valid, &err.value),
               err);
    report.body["replay_valid"] = valid == 1;
    int code = valid == 1 ? 0 : 1;
    report.print(code);
    return code;
  }

  CString out, err;
  require_ok(pl_ef_game(l.value, r.value, o.k, o.lpins.c_str(), o.rpins.c_str(),
                        &out.value, &err.value),
             err);
  Json game = parse_payload(out);
  report.body = game;
  int code = game["winner"] == "II" ? 0 : 1;
  report.print(code);
  std::cerr << "winner: " << game["winner"].get<std::string>() << "\n";
  return code;
}

int cmd_decompose(const CommonOpts& o) {
  Report report;
  report.command = "decompose";
  Poset p = load_poset(report, o.posets.at(0));
  report.input(o.mode);

  if (!o.transfer.empty()) {
    Poset target = load_poset(report, o.transfer);
    std::string sentences;
    if (!o.taus.empty()) {
      Json sj = Json::array();
      for (const auto& t : o.taus) sj.push_back(formula_text(t));
      sentences = sj.dump();
      report.input(sentences);
    }
    CString out, err;
    require_ok(pl_transfer(p.value, o.mode.c_str(), target.value,
                           sentences.empty() ? nullptr : sentences.c_str(),
                           o.decomposition, o.budget, &out.value, &err.value),
               err);
    report.body = parse_payload(out);
    report.print(0);
    return 0;
  }

  CString out, err;
  require_ok(pl_decompositions(p.value, o.mode.c_str(), o.emit_formulas ? 1 : 0,
                               o.budget, &out.value, &err.value),
             err);
  report.body = parse_payload(out);
  report.print(0);
  std::cerr << report.body["count"].get<std::size_t>() << " decompositions\n";
  return 0;
}

int cmd_classify(const CommonOpts& o) {
  Report report;
  report.command = "classify";
  Poset p = load_poset(report, o.posets.at(0));
  if (!o.klass.empty()) {
    report.input(o.klass);
    int member = 0;
    CString err;
    require_ok(pl_class_member(p.value, o.klass.c_str(), &member, &err.value), err);
    report.body["class"] = o.klass;
    report.body["member"] = member == 1;
    int code = member == 1 ? 0 : 1;
    report.print(code);
    return code;
  }
  CString out, err;
  require_ok(pl_classify(p.value, &out.value, &err.value), err);
  report.body = parse_payload(out);
  CString extrema;
  require_ok(pl_extrema(p.value, &extrema.value), CString{});
  report.body["extrema"] = parse_payload(extrema);
  report.print(0);
  return 0;
}

int cmd_closure(const CommonOpts& o) {
  Report report;
  report.command = "closure";
  report.input(o.klass);
  report.input(o.op);
  if (!o.member.empty()) {
    Poset p = load_poset(report, o.member);
    CString out, err;
    require_ok(pl_closure_membership(p.value, o.klass.c_str(), o.op.c_str(),
                                     &out.value, &err.value),
               err);
    report.body = parse_payload(out);
    int code = report.body["member"].get<bool>() ? 0 : 1;
    report.print(code);
    return code;
  }
  CString out, err;
  require_ok(pl_closure(o.klass.c_str(), o.op.c_str(), o.bound, &out.value,
                        &err.value),
             err);
  report.body = parse_payload(out);
  report.print(0);
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  Report report;
  report.command = "verify";
  report.input(o.suite);
  CString out, err;
  require_ok(pl_verify(o.suite.c_str(), o.bound, o.k, o.seed, o.samples,
                       o.work_cap, &out.value, &err.value),
             err);
  report.body = parse_payload(out);
  bool pass = report.body["pass"].get<bool>();
  for (const auto& r : report.body["reports"]) {
    std::cerr << (r["pass"].get<bool>() ? "pass " : "FAIL ")
              << r["suite"].get<std::string>() << " (" << r["checks"]
              << " checks)\n";
  }
  int code = pass ? 0 : 1;
  report.print(code);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posetlab: finite partial orders, first-order evaluation, "
               "lexicographic decompositions, back-and-forth games, closures"};
  app.require_subcommand(1);
  CommonOpts o;

  auto add_common = [&](CLI::App* cmd, bool needs_poset, int poset_count = 1) {
    if (needs_poset)
      cmd->add_option("--poset", o.posets, "poset json file")
          ->required()
          ->expected(poset_count);
    cmd->add_flag("--json", o.json, "json report on stdout (default)");
    return cmd;
  };

  CLI::App* eval = add_common(app.add_subcommand("eval", "evaluate a formula"), true);
  eval->add_option("--formula", o.formula, "formula text or @file")->required();
  eval->add_option("--assign", o.assign, "assignment json object");

  CLI::App* rel = app.add_subcommand("relativize", "restrict quantifiers to a definable set");
  rel->add_option("--formula", o.formula, "formula text or @file")->required();
  rel->add_option("--guard", o.guard, "defining formula")->required();
  rel->add_option("--params", o.params, "comma separated parameter variables");
  rel->add_option("--subject", o.subject, "subject variable (default v)");
  rel->add_flag("--json", o.json, "json report on stdout (default)");

  CLI::App* canon = add_common(app.add_subcommand("canon", "canonical form"), true);
  canon->add_option("--budget", o.budget, "permutation search budget");

  CLI::App* ef = add_common(app.add_subcommand("ef", "back-and-forth game"), true, 2);
  ef->add_option("--k", o.k, "rounds (default 3)");
  ef->add_option("--lpins", o.lpins, "left pinned elements, comma separated");
  ef->add_option("--rpins", o.rpins, "right pinned elements, comma separated");
  ef->add_option("--replay", o.replay, "verify a recorded game json file");

  CLI::App* dec = add_common(app.add_subcommand("decompose", "lexicographic decompositions"), true);
  dec->add_option("--mode", o.mode, "fld1 (block maxima) or fld0 (block minima)");
  dec->add_flag("--emit-formulas", o.emit_formulas, "include defining formulas");
  dec->add_option("--transfer", o.transfer, "transfer witnesses onto this poset file");
  dec->add_option("--tau", o.taus, "sentence payload per block (repeatable)");
  dec->add_option("--decomposition", o.decomposition,
                  "restrict transfer to one decomposition index");
  dec->add_option("--budget", o.budget,
                  "partition / tuple-search budgets (0 keeps the defaults)");

  CLI::App* cls = add_common(app.add_subcommand("classify", "class predicates"), true);
  cls->add_option("--class", o.klass, "class expression to test membership");

  CLI::App* clo = app.add_subcommand("closure", "closure operators");
  clo->add_option("--class", o.klass, "base class expression")->required();
  clo->add_option("--operator", o.op, "sigma | sigma-rooted | union-product");
  clo->add_option("--bound", o.bound, "size bound")->required();
  clo->add_option("--member", o.member, "decide membership for this poset file");
  clo->add_flag("--json", o.json, "json report on stdout (default)");

  CLI::App* ver = app.add_subcommand("verify", "fact-checking suites");
  ver->add_option("--suite", o.suite, "suite name or 'all'")->required();
  ver->add_option("--bound", o.bound, "structure size bound");
  ver->add_option("--k", o.k, "game length cap");
  ver->add_option("--seed", o.seed, "rng seed for sampled suites");
  ver->add_option("--samples", o.samples, "sample count for sampled suites");
  ver->add_option("--work-cap", o.work_cap, "instance cap per generated layer");
  ver->add_flag("--json", o.json, "json report on stdout (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (app.got_subcommand(eval)) code = cmd_eval(o);
    else if (app.got_subcommand(rel)) code = cmd_relativize(o);
    else if (app.got_subcommand(canon)) code = cmd_canon(o);
    else if (app.got_subcommand(ef)) code = cmd_ef(o);
    else if (app.got_subcommand(dec)) code = cmd_decompose(o);
    else if (app.got_subcommand(cls)) code = cmd_classify(o);
    else if (app.got_subcommand(clo)) code = cmd_closure(o);
    else if (app.got_subcommand(ver)) code = cmd_verify(o);
  } catch (const CliError& e) {
    Json out;
    out["error"] = e.what();
    out["exit"] = e.code();
    std::cout << out.dump() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    code = e.code();
  } catch (const std::exception& e) {
    Json out;
    out["error"] = e.what();
    out["exit"] = 3;
    std::cout << out.dump() << "\n";
    std::cerr << "error: " << e.what() << "\n";
    code = 3;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "wall_time_ms " << elapsed << "\n";
  return code;
}
