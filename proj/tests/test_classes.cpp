#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "catalog.hpp"
#include "classes.hpp"
#include "json_io.hpp"

using namespace posetlab;

namespace {

FinitePoset diamond() { return direct_product({chain(2, "a"), chain(2, "b")}); }

std::set<CanonicalForm> forms_of(const std::vector<FinitePoset>& ps) {
  std::set<CanonicalForm> out;
  for (const auto& p : ps) out.insert(canonical_form(p));
  return out;
}

}  // namespace

TEST_CASE("named predicates on standard shapes") {
  CHECK(is_linear(chain(4)));
  CHECK_FALSE(is_linear(antichain(2)));

  CHECK(is_tree(chain(3)));
  CHECK(is_tree(antichain(3)));
  CHECK(is_tree(rooted(antichain(2))));
  CHECK_FALSE(is_tree(n_poset()));
  CHECK_FALSE(is_tree(diamond()));

  CHECK(is_reversed_tree(reverse(rooted(antichain(2)))));

  CHECK_FALSE(is_reticle(n_poset()));
  CHECK(is_reticle(chain(5)));
  CHECK(is_reticle(diamond()));

  CHECK(is_boolean_algebra(singleton()));
  CHECK(is_boolean_algebra(chain(2)));
  CHECK(is_boolean_algebra(diamond()));
  CHECK(is_boolean_algebra(powerset_lattice(3)));
  CHECK_FALSE(is_boolean_algebra(chain(3)));
  CHECK_FALSE(is_boolean_algebra(chain(4)));
  CHECK_FALSE(is_boolean_algebra(antichain(4)));

  CHECK(is_antichain(antichain(3)));
  CHECK_FALSE(is_antichain(chain(2)));
}

TEST_CASE("trees sit inside reticles, linears inside trees") {
  for (const auto& x : all_posets_upto(5)) {
    if (is_linear(x)) CHECK(is_tree(x));
    if (is_tree(x)) CHECK(is_reticle(x));
    // reversing a min-rooted tree yields a max-rooted poset
    if (is_tree(x) && x.has_min()) CHECK(reverse(x).has_max());
    CHECK(is_reticle(x) == is_reticle(reverse(x)));
  }
}

TEST_CASE("class expressions") {
  CHECK(ClassSpec::parse("linear").contains(chain(3)));
  CHECK_FALSE(ClassSpec::parse("linear&has-min").contains(antichain(2)));
  CHECK(ClassSpec::parse("tree&has-min").contains(rooted(antichain(2))));
  CHECK_FALSE(ClassSpec::parse("tree&has-min").contains(antichain(2)));
  CHECK(ClassSpec::parse("all-finite").contains(n_poset()));
  CHECK(ClassSpec::parse("singleton-only").contains(singleton()));
  CHECK_FALSE(ClassSpec::parse("singleton-only").contains(chain(2)));
  CHECK_THROWS_AS(ClassSpec::parse("no-such-class"), Error);
  CHECK_THROWS_AS(ClassSpec::parse("linear&tree"), Error);

  // seed files hold arrays of poset objects
  std::string path = "seeds_test.json";
  {
    Json arr = Json::array();
    arr.push_back(poset_to_json(chain(2)));
    arr.push_back(poset_to_json(antichain(2)));
    std::ofstream out(path);
    out << arr.dump();
  }
  ClassSpec seeds = ClassSpec::parse("seeds:" + path);
  CHECK(seeds.contains(chain(2, "zz")));
  CHECK(seeds.contains(antichain(2)));
  CHECK_FALSE(seeds.contains(chain(3)));
  std::remove(path.c_str());
}

TEST_CASE("sigma closure of the two-chain") {
  auto result = closure_sigma(ClassSpec::from_seeds({chain(2)}), 4);
  std::set<CanonicalForm> want = {
      canonical_form(chain(2)),
      canonical_form(chain(4)),
      canonical_form(disjoint_union({chain(2), chain(2, "x")})),
  };
  CHECK(result.members() == want);
  CHECK(result.members().count(canonical_form(chain(3))) == 0);
}

TEST_CASE("sigma closure of singletons gives every form in range") {
  auto result = closure_sigma(ClassSpec::named(NamedClass::SingletonOnly), 4);
  CHECK(result.members() == forms_of(all_posets_upto(4)));
  CHECK(result.members().size() == 24);
}

TEST_CASE("membership cross-checks the closure sets") {
  ClassSpec base = ClassSpec::from_seeds({chain(2)});
  auto members = closure_sigma(base, 4).members();
  for (const auto& x : all_posets_upto(4)) {
    auto result = closure_membership(x, base, ClosureOp::Sigma);
    CHECK(result.member == (members.count(canonical_form(x)) > 0));
    if (result.member) {
      REQUIRE(result.witness.has_value());
      CHECK(canonical_form(result.witness->rebuild()) == canonical_form(x));
    }
  }
}

TEST_CASE("rooted-sum closure stages") {
  // the rooted two-antichain is the three-element fork
  auto result = closure_sigma_rooted(ClassSpec::from_seeds({antichain(2)}), 3);
  CHECK(result.members().count(canonical_form(rooted(antichain(2)))) == 1);
  CHECK(result.stages.size() == 2);

  // everything rooted lands on a minimum; later stages decompose over minima
  for (const auto& code : result.stages[1]) {
    FinitePoset rep = code.representative();
    CHECK(rep.has_min());
  }

  // all finite posets absorb the operation in one step
  auto everything = closure_sigma_rooted(ClassSpec::named(NamedClass::AllFinite), 5);
  CHECK(everything.members() == forms_of(all_posets_upto(5)));
  CHECK(everything.stabilized_at == 1);

  // singletons generate everything immediately
  auto ones = closure_sigma_rooted(ClassSpec::named(NamedClass::SingletonOnly), 4);
  CHECK(ones.members() == forms_of(all_posets_upto(4)));
  CHECK(ones.stabilized_at == 1);
}

TEST_CASE("union-product closure of the two-chain") {
  auto result = closure_union_product(ClassSpec::from_seeds({chain(2)}), 4);
  std::set<CanonicalForm> want = {
      canonical_form(chain(2)),
      canonical_form(diamond()),
      canonical_form(disjoint_union({chain(2), chain(2, "x")})),
  };
  CHECK(result.members() == want);

  // singletons only ever produce antichains
  auto anti = closure_union_product(ClassSpec::named(NamedClass::SingletonOnly), 4);
  std::set<CanonicalForm> antichains;
  for (std::size_t n = 1; n <= 4; ++n)
    antichains.insert(canonical_form(antichain(n)));
  CHECK(anti.members() == antichains);
}

TEST_CASE("one-step equals fixpoint across operators") {
  std::vector<ClassSpec> bases = {
      ClassSpec::named(NamedClass::SingletonOnly),
      ClassSpec::from_seeds({chain(2)}),
      ClassSpec::named(NamedClass::Linear, true, false),
  };
  for (const auto& base : bases) {
    CHECK(sigma_one_step(base, 5) == sigma_fixpoint(base, 5));
    CHECK(union_product_one_step(base, 5) == union_product_fixpoint(base, 5));
  }
}

TEST_CASE("membership search produces faithful witnesses") {
  // a four-chain decomposes into two-chains over a two-chain
  auto m = closure_membership(chain(4), ClassSpec::from_seeds({chain(2)}),
                              ClosureOp::Sigma);
  REQUIRE(m.member);
  CHECK(m.witness->kind == ConstructionWitness::Kind::Sum);
  CHECK(canonical_form(m.witness->rebuild()) == canonical_form(chain(4)));

  // the N poset is a sum of singletons, so it lies in the linear closure
  auto n = closure_membership(n_poset(), ClassSpec::named(NamedClass::Linear),
                              ClosureOp::Sigma);
  CHECK(n.member);
  CHECK(canonical_form(n.witness->rebuild()) == canonical_form(n_poset()));

  // every small poset lies in the rooted-sum closure of all finite posets
  for (const auto& x : all_posets_upto(4)) {
    auto r = closure_membership(x, ClassSpec::named(NamedClass::AllFinite),
                                ClosureOp::SigmaRooted);
    CHECK(r.member);
  }

  // union-product witnesses
  auto u = closure_membership(disjoint_union({diamond(), chain(2, "z")}),
                              ClassSpec::from_seeds({chain(2)}),
                              ClosureOp::UnionProduct);
  REQUIRE(u.member);
  CHECK(u.witness->kind == ConstructionWitness::Kind::Union);
  CHECK(canonical_form(u.witness->rebuild()) ==
        canonical_form(disjoint_union({diamond(), chain(2, "z")})));

  auto miss = closure_membership(chain(3), ClassSpec::from_seeds({chain(2)}),
                                 ClosureOp::UnionProduct);
  CHECK_FALSE(miss.member);
}

TEST_CASE("rooted-sum generation agrees with the membership decision") {
  ClassSpec base = ClassSpec::from_seeds({antichain(2)});
  auto members = closure_sigma_rooted(base, 4).members();
  for (const auto& x : all_posets_upto(4)) {
    auto decision = closure_membership(x, base, ClosureOp::SigmaRooted);
    CHECK(decision.member == (members.count(canonical_form(x)) > 0));
    if (decision.member)
      CHECK(canonical_form(decision.witness->rebuild()) == canonical_form(x));
  }
}

TEST_CASE("rooted-sum membership distinguishes unreachable posets") {
  // with only the two-chain as base, a three-antichain is out of reach
  ClassSpec base = ClassSpec::from_seeds({chain(2)});
  auto r = closure_membership(antichain(3), base, ClosureOp::SigmaRooted);
  CHECK_FALSE(r.member);

  // but the fork sits in the closure of the two-antichain
  ClassSpec anti = ClassSpec::from_seeds({antichain(2)});
  auto fork = closure_membership(rooted(antichain(2)), anti, ClosureOp::SigmaRooted);
  CHECK(fork.member);
  CHECK(canonical_form(fork.witness->rebuild()) ==
        canonical_form(rooted(antichain(2))));
}

TEST_CASE("closure results serialize") {
  auto result = closure_sigma(ClassSpec::from_seeds({chain(2)}), 4);
  Json j = result.to_json();
  CHECK(j["operator"] == "sigma");
  CHECK(j["bound"] == 4);
  CHECK(j["stages"].is_array());
  for (const auto& stage : j["stages"])
    for (const auto& code : stage)
      CHECK_NOTHROW(CanonicalForm::from_string(code.get<std::string>()));
}
