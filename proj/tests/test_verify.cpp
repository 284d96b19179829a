#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "verify.hpp"

using namespace posetlab;

TEST_CASE("corpus shape") {
  CHECK(sentence_corpus().size() >= 20);
  for (const auto& f : sentence_corpus()) {
    CHECK(f.quantifier_rank() <= 3);
    CHECK(f.free_variables().size() <= 2);
    CHECK(parse_formula(f.to_string()) == f);
  }
  for (const auto& r : relativizer_corpus())
    CHECK(parse_formula(r.guard.to_string()) == r.guard);
  CHECK(relativizer_corpus().size() >= 5);
  for (const auto& r : relativizer_corpus()) {
    auto frees = r.guard.free_variables();
    for (const auto& v : frees)
      CHECK((v == r.subject ||
             std::find(r.params.begin(), r.params.end(), v) != r.params.end()));
  }
}

TEST_CASE("chain criterion basics") {
  CHECK(chains_equivalent_expected(3, 3, 2));
  CHECK(chains_equivalent_expected(3, 4, 2));
  CHECK_FALSE(chains_equivalent_expected(2, 3, 2));
  CHECK(chains_equivalent_expected(7, 8, 3));
  CHECK_FALSE(chains_equivalent_expected(6, 8, 3));
}

TEST_CASE("suites pass at small parameters") {
  SuiteParams p;
  p.bound = 3;
  p.k = 2;
  p.samples = 12;
  p.work_cap = 4000;
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    SuiteReport r = run_suite(name, p);
    CHECK(r.pass);
    CHECK(r.checks > 0);
    Json j = r.to_json();
    CHECK(j["suite"] == name);
    CHECK(j["pass"] == true);
  }
}

TEST_CASE("unknown suites are rejected") {
  CHECK_THROWS_AS(run_suite("no-such-suite", SuiteParams{}), Error);
}

TEST_CASE("sampled suites are deterministic under a fixed seed") {
  SuiteParams p;
  p.bound = 3;
  p.k = 2;
  p.samples = 10;
  p.work_cap = 2000;
  Json a = run_suite("pi-union", p).to_json();
  Json b = run_suite("pi-union", p).to_json();
  CHECK(a.dump() == b.dump());
  p.seed = 7;
  Json c = run_suite("transfer-sampled", p).to_json();
  Json d = run_suite("transfer-sampled", p).to_json();
  CHECK(c.dump() == d.dump());
}
