// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion runs the relevant machinery at its stated scale and pins
// every expected value in code.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "classes.hpp"
#include "ef.hpp"
#include "fld.hpp"
#include "json_io.hpp"
#include "verify.hpp"

using namespace posetlab;

namespace {

int failures = 0;

void criterion(const std::string& name, double limit_seconds,
               const std::function<bool(std::string&)>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  bool in_time = limit_seconds <= 0 || secs <= limit_seconds;
  if (ok && in_time) {
    std::printf("PASS %-28s %7.2fs  %s\n", name.c_str(), secs, detail.c_str());
  } else {
    ++failures;
    std::printf("FAIL %-28s %7.2fs  %s%s\n", name.c_str(), secs,
                detail.c_str(), in_time ? "" : " [over time budget]");
  }
  std::fflush(stdout);
}

bool suite_passes(const std::string& name, const SuiteParams& params,
                  std::string& detail) {
  SuiteReport r = run_suite(name, params);
  detail = std::to_string(r.checks) + " checks";
  if (r.skipped) detail += ", " + std::to_string(r.skipped) + " skipped";
  if (!r.pass && !r.failures.empty())
    detail += " first counterexample: " + r.failures[0].dump();
  return r.pass;
}

}  // namespace

int main() {
  std::printf("acceptance: finite-machinery criteria\n");

  // 1. quantifier relativization is sound on every instance
  criterion("relativization", 60, [](std::string& detail) {
    if (sentence_corpus().size() < 20 || relativizer_corpus().size() < 5) {
      detail = "corpus too small";
      return false;
    }
    for (const auto& f : sentence_corpus())
      if (f.quantifier_rank() > 3) {
        detail = "corpus rank exceeded";
        return false;
      }
    SuiteParams p;
    p.bound = 4;
    return suite_passes("relativization", p, detail);
  });

  // 2. block formulas define their blocks and the equivalence classes
  criterion("block-definability", 120, [](std::string& detail) {
    SuiteParams p;
    p.bound = 5;
    return suite_passes("block-definability", p, detail);
  });

  // 3. decomposition transfer: self-witnessing and sampled targets
  criterion("transfer-self", 0, [](std::string& detail) {
    SuiteParams p;
    p.bound = 5;
    return suite_passes("transfer-self", p, detail);
  });
  criterion("transfer-sampled", 0, [](std::string& detail) {
    SuiteParams p;
    p.bound = 5;
    p.samples = 100;
    p.seed = 2024;
    return suite_passes("transfer-sampled", p, detail);
  });

  // 4. nested sums flatten; exhaustive, no sampling cap
  criterion("sum-associativity", 0, [](std::string& detail) {
    SuiteParams p;
    p.bound = 3;
    p.work_cap = 0;
    return suite_passes("sum-associativity", p, detail);
  });

  // 5. summand-wise equivalence carries to sums
  criterion("sum-composition", 300, [](std::string& detail) {
    SuiteParams p;
    p.bound = 4;
    p.k = 3;
    p.work_cap = 60000;
    return suite_passes("sum-composition", p, detail);
  });

  // 6. closures: one step suffices, and the two collapse identities hold
  criterion("closure-onestep", 0, [](std::string& detail) {
    SuiteParams p;
    p.bound = 5;
    return suite_passes("closure-onestep", p, detail);
  });
  criterion("closure-identities", 0, [](std::string& detail) {
    auto singleton_closure =
        closure_sigma(ClassSpec::named(NamedClass::SingletonOnly), 4);
    auto members = singleton_closure.members();
    std::size_t size4 = 0;
    for (const auto& f : members)
      if (f.size == 4) ++size4;
    if (members.size() != 24 || size4 != 16) {
      detail = "singleton sigma closure: " + std::to_string(members.size()) +
               " members, " + std::to_string(size4) + " of size 4";
      return false;
    }
    std::set<CanonicalForm> everything;
    for (const auto& x : all_posets_upto(5)) everything.insert(canonical_form(x));
    auto rooted_all =
        closure_sigma_rooted(ClassSpec::named(NamedClass::AllFinite), 5);
    if (rooted_all.members() != everything || rooted_all.stabilized_at != 1) {
      detail = "rooted closure of all finite posets moved";
      return false;
    }
    detail = "24 forms (16 at size 4); rooted closure stable at stage 1";
    return true;
  });

  // 7. linear-with-min implies tree-with-min implies reticle-with-min
  criterion("class-chain", 0, [](std::string& detail) {
    SuiteParams p;
    p.bound = 5;
    return suite_passes("class-chain", p, detail);
  });

  // 8. definable spectra are isomorphism invariants
  criterion("w-invariance", 0, [](std::string& detail) {
    SuiteParams p;
    p.bound = 4;
    return suite_passes("w-invariance", p, detail);
  });

  // 9. chain games match the arithmetic criterion
  criterion("ef-chains", 0, [](std::string& detail) {
    SuiteParams p;
    p.bound = 8;
    p.k = 3;
    return suite_passes("ef-chains", p, detail);
  });

  if (failures) {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("acceptance: all criteria passed\n");
  return 0;
}
