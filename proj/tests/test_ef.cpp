#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "catalog.hpp"
#include "ef.hpp"
#include "verify.hpp"

using namespace posetlab;

namespace {

// unmemoized reference solver, small cases only
bool brute_duplicator_wins(const FinitePoset& l, const FinitePoset& r,
                           std::vector<std::pair<std::size_t, std::size_t>> pairs,
                           std::size_t k) {
  for (const auto& [a, b] : pairs)
    for (const auto& [c, d] : pairs) {
      if (a == c && b != d) return false;
      if (b == d && a != c) return false;
      if (l.le(a, c) != r.le(b, d)) return false;
    }
  if (k == 0) return true;
  for (std::size_t a = 0; a < l.size(); ++a) {
    bool answered = false;
    for (std::size_t b = 0; b < r.size() && !answered; ++b) {
      auto next = pairs;
      next.emplace_back(a, b);
      if (brute_duplicator_wins(l, r, next, k - 1)) answered = true;
    }
    if (!answered) return false;
  }
  for (std::size_t b = 0; b < r.size(); ++b) {
    bool answered = false;
    for (std::size_t a = 0; a < l.size() && !answered; ++a) {
      auto next = pairs;
      next.emplace_back(a, b);
      if (brute_duplicator_wins(l, r, next, k - 1)) answered = true;
    }
    if (!answered) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("identity games") {
  for (const auto& x : all_posets_upto(4))
    for (std::size_t k = 0; k <= 4; ++k) CHECK(equiv_k(x, x, k));
}

TEST_CASE("chains and small shapes against the brute solver") {
  CHECK_FALSE(equiv_k(chain(2), chain(3), 2));
  CHECK(equiv_k(chain(3), chain(4), 2));
  CHECK(equiv_k(antichain(2), chain(2), 1));
  CHECK_FALSE(equiv_k(antichain(2), chain(2), 2));

  FinitePoset n = FinitePoset::from_relation(
      {"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"b", "d"}});
  CHECK_FALSE(equiv_k(n, chain(4), 2));

  auto forms = all_posets_upto(3);
  for (const auto& a : forms)
    for (const auto& b : forms)
      for (std::size_t k = 0; k <= 3; ++k)
        CHECK(equiv_k(a, b, k) == brute_duplicator_wins(a, b, {}, k));
}

TEST_CASE("chain criterion matches the solver") {
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t m = 1; m <= 8; ++m)
      for (std::size_t n = 1; n <= 8; ++n)
        CHECK(equiv_k(chain(m, "l"), chain(n, "r"), k) ==
              chains_equivalent_expected(m, n, k));
}

TEST_CASE("monotonicity in the round count") {
  auto forms = all_posets_upto(4);
  for (const auto& a : forms)
    for (const auto& b : forms)
      for (std::size_t k = 0; k < 3; ++k)
        if (equiv_k(a, b, k + 1)) CHECK(equiv_k(a, b, k));
}

TEST_CASE("isomorphic posets are equivalent at every tested depth") {
  for (const auto& x : all_posets_upto(4)) {
    std::vector<std::string> names = x.elements();
    std::vector<std::string> rev = names;
    std::reverse(rev.begin(), rev.end());
    std::map<std::string, std::string> table;
    for (std::size_t i = 0; i < names.size(); ++i) table[names[i]] = rev[i];
    FinitePoset y = x.renamed([&](const std::string& e) { return table.at(e); });
    for (std::size_t k = 0; k <= 4; ++k) CHECK(equiv_k(x, y, k));
  }
}

TEST_CASE("distinguishing rank") {
  CHECK(distinguishing_rank(chain(2), chain(3), 5) == 2);
  CHECK_FALSE(distinguishing_rank(chain(3), chain(3), 5).has_value());
  CHECK(distinguishing_rank(chain(1), chain(2), 5) == 2);
  CHECK(distinguishing_rank(chain(3), chain(4), 5) == 3);
  CHECK(distinguishing_rank(chain(7), chain(8), 5) == 4);
  // non-isomorphic small posets always get separated well under the cap
  auto forms = all_posets_upto(4);
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j)
      CHECK(distinguishing_rank(forms[i], forms[j], 5).has_value());
}

TEST_CASE("pinned games") {
  FinitePoset l = chain(3, "a");  // a0 < a1 < a2
  FinitePoset r = chain(3, "b");
  CHECK(ef_wins(l, {"a1"}, r, {"b1"}, 2));
  CHECK_FALSE(ef_wins(l, {"a1"}, r, {"b2"}, 1));
  // mismatched pin relations lose immediately
  CHECK_FALSE(ef_wins(l, {"a0", "a1"}, r, {"b1", "b0"}, 0));
  CHECK_THROWS_AS(ef_wins(l, {"a0"}, r, {}, 1), Error);
}

TEST_CASE("game traces replay") {
  auto forms = all_posets_upto(3);
  for (const auto& a : forms)
    for (const auto& b : forms)
      for (std::size_t k = 1; k <= 3; ++k) {
        GameResult g = ef_game(a, {}, b, {}, k);
        CHECK(g.second_player_wins == equiv_k(a, b, k));
        CHECK(ef_replay(a, {}, b, {}, g));
        GameResult parsed = game_result_from_json(g.to_json());
        CHECK(ef_replay(a, {}, b, {}, parsed));
      }
}

TEST_CASE("tampered traces fail replay") {
  GameResult g = ef_game(chain(2), {}, chain(3, "x"), {}, 2);
  CHECK_FALSE(g.second_player_wins);
  CHECK(ef_replay(chain(2), {}, chain(3, "x"), {}, g));

  GameResult forged = g;
  forged.second_player_wins = true;
  CHECK_FALSE(ef_replay(chain(2), {}, chain(3, "x"), {}, forged));

  GameResult wins = ef_game(chain(3), {}, chain(4, "x"), {}, 2);
  CHECK(wins.second_player_wins);
  REQUIRE(wins.trace.size() == 4);
  GameResult cut = wins;
  cut.trace.pop_back();
  CHECK_FALSE(ef_replay(chain(3), {}, chain(4, "x"), {}, cut));
}

TEST_CASE("positions expose partial isomorphism checks") {
  FinitePoset l = chain(2);
  FinitePoset r = antichain(2);
  GamePosition pos{&l, &r, {{0, 0}, {1, 1}}, 0};
  CHECK_FALSE(pos.pairs_form_partial_isomorphism());
  GamePosition single{&l, &r, {{0, 0}}, 0};
  CHECK(single.pairs_form_partial_isomorphism());
}
