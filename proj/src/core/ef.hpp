#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json_io.hpp"
#include "poset.hpp"

namespace posetlab {

/// State of a back-and-forth game: two structures with pinned tuples, the
/// pairs played so far (pins included), and the rounds remaining.
struct GamePosition {
  const FinitePoset* left = nullptr;
  const FinitePoset* right = nullptr;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (left, right) indices
  std::size_t rounds_left = 0;

  bool pairs_form_partial_isomorphism() const;
};

/// True iff the duplicator (Player II) has a winning strategy in the k-round
/// game from the pinned position. Spoiler may pick on either side each round.
/// Memoized on the sorted pair set and rounds left.
bool ef_wins(const FinitePoset& left, const std::vector<std::string>& left_pins,
             const FinitePoset& right, const std::vector<std::string>& right_pins,
             std::size_t k);

/// No pins: k-round elementary equivalence.
bool equiv_k(const FinitePoset& left, const FinitePoset& right, std::size_t k);

/// Least k <= cap distinguishing the two structures, or absent.
std::optional<std::size_t> distinguishing_rank(const FinitePoset& left,
                                               const FinitePoset& right,
                                               std::size_t cap);

struct GameMove {
  std::size_t round = 0;
  bool by_spoiler = true;  // Player I moves first each round
  bool left_side = true;
  std::string element;
};

/// Solved game plus one witness playout: Player I's moves follow a winning
/// strategy when one exists, Player II's responses follow its own winning
/// strategy when it has one (and a best effort otherwise).
struct GameResult {
  bool second_player_wins = false;
  std::size_t k = 0;
  std::vector<GameMove> trace;

  Json to_json() const;
};

GameResult ef_game(const FinitePoset& left, const std::vector<std::string>& left_pins,
                   const FinitePoset& right, const std::vector<std::string>& right_pins,
                   std::size_t k);

/// Replays a trace: moves must alternate I/II on opposite sides within each
/// round, and the final map must match the claimed winner (a partial
/// isomorphism for II, a broken one for I).
bool ef_replay(const FinitePoset& left, const std::vector<std::string>& left_pins,
               const FinitePoset& right, const std::vector<std::string>& right_pins,
               const GameResult& claimed);

GameResult game_result_from_json(const Json& j);

}  // namespace posetlab
