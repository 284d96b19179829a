#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "catalog.hpp"
#include "fld.hpp"
#include "test_util.hpp"

using namespace posetlab;

namespace {

Formula F(const std::string& s) { return parse_formula(s); }

// independent oracle: a block partition is a valid decomposition iff some
// labeled index order rebuilds the poset as a lexicographic sum and every
// block carries the required root
std::vector<std::vector<std::vector<std::string>>> oracle_decompositions(
    const FinitePoset& x, DecompMode mode) {
  std::vector<std::vector<std::vector<std::string>>> found;
  for (const auto& partition : testutil::set_partitions(x.size())) {
    const std::size_t k = partition.size();
    bool roots_ok = true;
    std::vector<FinitePoset> blocks;
    for (const auto& ids : partition) {
      FinitePoset b = x.induced(ids);
      if ((mode == DecompMode::Fld1 && !b.has_max()) ||
          (mode == DecompMode::Fld0 && !b.has_min()))
        roots_ok = false;
      blocks.push_back(std::move(b));
    }
    if (!roots_ok) continue;
    bool realizable = false;
    for (const auto& mat : testutil::labeled_posets(k)) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < k; ++i) names.push_back(std::to_string(i));
      FinitePoset index(names, mat);
      std::map<std::string, FinitePoset> parts;
      for (std::size_t i = 0; i < k; ++i) parts.emplace(names[i], blocks[i]);
      FinitePoset sum = lex_sum(index, parts);
      // strip the namespacing and compare literally
      FinitePoset stripped = sum.renamed([](const std::string& e) {
        return e.substr(e.find('.') + 1);
      });
      if (stripped.same_order(x)) {
        realizable = true;
        break;
      }
    }
    if (!realizable) continue;
    std::vector<std::vector<std::string>> named;
    for (const auto& ids : partition) {
      std::vector<std::string> ns;
      for (std::size_t e : ids) ns.push_back(x.element(e));
      std::sort(ns.begin(), ns.end());
      named.push_back(std::move(ns));
    }
    std::sort(named.begin(), named.end());
    found.push_back(std::move(named));
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<std::vector<std::vector<std::string>>> partitions_of(
    const std::vector<Decomposition>& ds) {
  std::vector<std::vector<std::vector<std::string>>> out;
  for (const auto& d : ds) {
    auto blocks = d.blocks;
    std::sort(blocks.begin(), blocks.end());
    out.push_back(blocks);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("decomposition counts on standard shapes") {
  CHECK(enumerate_decompositions(chain(4), DecompMode::Fld1).size() == 8);
  CHECK(enumerate_decompositions(antichain(2), DecompMode::Fld1).size() == 1);
  CHECK(enumerate_decompositions(chain(4), DecompMode::Fld0).size() == 8);

  // the all-singleton partition is always present, with index matching x
  for (const auto& x : all_posets_upto(4)) {
    for (DecompMode mode : {DecompMode::Fld0, DecompMode::Fld1}) {
      auto ds = enumerate_decompositions(x, mode);
      bool found = false;
      for (const auto& d : ds)
        if (d.block_count() == x.size()) {
          found = true;
          CHECK(canonical_form(d.index) == canonical_form(x));
        }
      CHECK(found);
    }
  }
  CHECK_THROWS_AS(enumerate_decompositions(antichain(11), DecompMode::Fld1),
                  Error);
}

TEST_CASE("enumeration agrees with the partition-and-index oracle") {
  for (const auto& x : all_posets_upto(4)) {
    for (DecompMode mode : {DecompMode::Fld0, DecompMode::Fld1}) {
      auto got = partitions_of(enumerate_decompositions(x, mode));
      auto want = oracle_decompositions(x, mode);
      CHECK(got == want);
    }
  }
  // spot checks at size 5 keep the oracle affordable
  auto five = all_posets(5);
  for (std::size_t i = 0; i < five.size(); i += 9) {
    auto got = partitions_of(enumerate_decompositions(five[i], DecompMode::Fld1));
    auto want = oracle_decompositions(five[i], DecompMode::Fld1);
    CHECK(got == want);
  }
}

TEST_CASE("every enumerated decomposition validates") {
  for (const auto& x : all_posets_upto(4))
    for (DecompMode mode : {DecompMode::Fld0, DecompMode::Fld1})
      for (const auto& d : enumerate_decompositions(x, mode)) {
        std::string why;
        CHECK_MESSAGE(validate_decomposition(d, &why), why);
      }
}

TEST_CASE("duality: block partitions swap modes under reversal") {
  for (const auto& x : all_posets_upto(4)) {
    auto direct = partitions_of(enumerate_decompositions(x, DecompMode::Fld1));
    auto dual = partitions_of(enumerate_decompositions(reverse(x), DecompMode::Fld0));
    CHECK(direct == dual);
  }
}

TEST_CASE("witness formulas on the split chain") {
  FinitePoset four = chain(4);
  auto ds = enumerate_decompositions(four, DecompMode::Fld1);
  const Decomposition* split = nullptr;
  for (const auto& d : ds)
    if (d.block_count() == 2 && d.blocks[0].size() == 2) split = &d;
  REQUIRE(split != nullptr);
  CHECK(split->blocks[0] == std::vector<std::string>{"c0", "c1"});
  CHECK(split->roots == std::vector<std::string>{"c1", "c3"});

  WitnessFormulas w = build_witness_formulas(*split);
  Assignment params = w.params_for(split->roots);

  for (const auto& e : four.elements()) {
    Assignment a = params;
    a["v"] = e;
    bool in0 = evaluate(four, w.block[0], a);
    bool in1 = evaluate(four, w.block[1], a);
    CHECK(in0 == (e == "c0" || e == "c1"));
    CHECK(in1 == (e == "c2" || e == "c3"));
  }
  CHECK(evaluate(four, w.partition, params));
  CHECK(evaluate(four, w.ordering, params));
  for (const auto& r : w.root) CHECK(evaluate(four, r, params));
  CHECK(evaluate(four, w.combined, params));

  auto classes = equivalence_classes(four, w, split->roots);
  CHECK(classes == std::vector<std::vector<std::string>>{{"c0", "c1"},
                                                         {"c2", "c3"}});
}

TEST_CASE("single-block formulas collapse to the root bound") {
  FinitePoset three = chain(3);
  auto ds = enumerate_decompositions(three, DecompMode::Fld1);
  for (const auto& d : ds)
    if (d.block_count() == 1) {
      WitnessFormulas w = build_witness_formulas(d);
      CHECK(w.block[0] == F("v <= w0"));
    }
  auto dual = enumerate_decompositions(three, DecompMode::Fld0);
  for (const auto& d : dual)
    if (d.block_count() == 1) {
      WitnessFormulas w = build_witness_formulas(d);
      CHECK(w.block[0] == F("w0 <= v"));
    }
}

TEST_CASE("block definability holds exhaustively on small posets") {
  for (const auto& x : all_posets_upto(4))
    for (DecompMode mode : {DecompMode::Fld0, DecompMode::Fld1})
      for (const auto& d : enumerate_decompositions(x, mode)) {
        auto report = verify_block_definability(d);
        CHECK(report.ok());
        WitnessFormulas w = build_witness_formulas(d);
        auto classes = equivalence_classes(x, w, d.roots);
        auto want = d.blocks;
        std::sort(want.begin(), want.end());
        CHECK(classes == want);
      }
}

TEST_CASE("transfer recovers and rejects") {
  FinitePoset four = chain(4);
  auto ds = enumerate_decompositions(four, DecompMode::Fld1);
  const Decomposition* split = nullptr;
  for (const auto& d : ds)
    if (d.block_count() == 2 && d.blocks[0].size() == 2) split = &d;
  REQUIRE(split != nullptr);
  WitnessFormulas w = build_witness_formulas(*split);

  // self-witnessing
  auto self = transfer_decomposition(four, w);
  REQUIRE(self.has_value());
  std::string why;
  CHECK_MESSAGE(validate_decomposition(*self, &why), why);

  // a longer chain still splits into two rooted intervals
  auto moved = transfer_decomposition(chain(5, "x"), w);
  REQUIRE(moved.has_value());
  CHECK(moved->block_count() == 2);
  CHECK_MESSAGE(validate_decomposition(*moved, &why), why);
  CHECK(moved->mode == DecompMode::Fld1);

  // an antichain cannot satisfy the ordering sentence
  CHECK_FALSE(transfer_decomposition(antichain(2), w).has_value());
}

TEST_CASE("transfer with sentence payloads") {
  FinitePoset four = chain(4);
  auto ds = enumerate_decompositions(four, DecompMode::Fld1);
  const Decomposition* split = nullptr;
  for (const auto& d : ds)
    if (d.block_count() == 2 && d.blocks[0].size() == 2) split = &d;
  REQUIRE(split != nullptr);

  std::vector<Formula> fine = {F("forall u . u <= u"), F("forall u . u <= u")};
  WitnessFormulas w_ok = build_witness_formulas(*split, fine);
  auto moved = transfer_decomposition(chain(6, "y"), w_ok);
  REQUIRE(moved.has_value());
  for (const auto& block : moved->blocks) {
    FinitePoset sub = moved->parent.induced_by_names(block);
    CHECK(evaluate(sub, fine[0]));
  }

  std::vector<Formula> impossible = {F("exists u . !(u <= u)"),
                                     F("forall u . u <= u")};
  WitnessFormulas w_bad = build_witness_formulas(*split, impossible);
  CHECK_FALSE(transfer_decomposition(chain(6, "y"), w_bad).has_value());

  CHECK_THROWS_AS(build_witness_formulas(*split, {F("x <= x"), F("x = x")}),
                  Error);
  CHECK_THROWS_AS(build_witness_formulas(*split, {F("forall u . u <= u")}),
                  Error);
}

TEST_CASE("transferred decompositions also satisfy the formulas") {
  // the moved roots satisfy the combined sentence on the target
  FinitePoset five = chain(5);
  for (DecompMode mode : {DecompMode::Fld0, DecompMode::Fld1}) {
    for (const auto& x : all_posets_upto(3)) {
      for (const auto& d : enumerate_decompositions(x, mode)) {
        WitnessFormulas w = build_witness_formulas(d);
        auto moved = transfer_decomposition(five, w);
        if (!moved) continue;
        Assignment params = w.params_for(moved->roots);
        CHECK(evaluate(five, w.combined, params));
      }
    }
  }
}

TEST_CASE("decomposition json round trip") {
  FinitePoset four = chain(4);
  for (const auto& d : enumerate_decompositions(four, DecompMode::Fld1)) {
    Json j = d.to_json();
    Decomposition back = decomposition_from_json(j, four);
    CHECK(back.blocks == d.blocks);
    CHECK(back.roots == d.roots);
    CHECK(back.mode == d.mode);
    CHECK(back.index.same_order(d.index));
    std::string why;
    CHECK(validate_decomposition(back, &why));
  }
}

TEST_CASE("autonomous partitions include unrooted ones") {
  // the N shape has no 2-block decomposition in either mode, but the
  // partition machinery still reports the trivial and singleton partitions
  FinitePoset n = FinitePoset::from_relation(
      {"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"b", "d"}});
  auto parts = autonomous_partitions(n);
  bool trivial = false, singles = false;
  for (const auto& p : parts) {
    if (p.size() == 1) trivial = true;
    if (p.size() == n.size()) singles = true;
  }
  CHECK(trivial);
  CHECK(singles);
}
