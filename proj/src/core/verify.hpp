#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "formula.hpp"
#include "json_io.hpp"

namespace posetlab {

/// Fixed evaluation corpus: sentences and open formulas of quantifier rank
/// at most 3 over the order language.
const std::vector<Formula>& sentence_corpus();

struct Relativizer {
  Formula guard = Formula::tautology();
  std::vector<std::string> params;
  std::string subject = "v";
};

/// Fixed relativizer corpus, 0 to 2 parameters each.
const std::vector<Relativizer>& relativizer_corpus();

/// Independent criterion for finite chains: the k-round game is a draw for
/// the spoiler iff the chains are equal or both have at least 2^k - 1 points.
bool chains_equivalent_expected(std::size_t m, std::size_t n, std::size_t k);

struct SuiteParams {
  std::size_t bound = 4;       // structure size bound
  std::size_t k = 3;           // game length cap
  std::uint64_t seed = 1;
  std::size_t samples = 100;   // for sampled suites
  std::size_t work_cap = 60000;  // per-layer instance cap for generated corpora
};

struct SuiteReport {
  std::string suite;
  bool pass = true;
  std::size_t checks = 0;
  std::size_t skipped = 0;
  std::vector<Json> failures;  // minimal counterexample payloads
  Json params;

  void check(bool ok, const std::function<Json()>& counterexample) {
    ++checks;
    if (!ok) {
      pass = false;
      if (failures.size() < 25) failures.push_back(counterexample());
    }
  }
  Json to_json() const;
};

/// Names accepted by run_suite, in execution order for "all".
const std::vector<std::string>& suite_names();

/// Executes one fact-checking suite; throws Parse for unknown names.
SuiteReport run_suite(const std::string& name, const SuiteParams& params);

}  // namespace posetlab
