#include "ef.hpp"

#include <algorithm>
#include <unordered_map>

namespace posetlab {

bool GamePosition::pairs_form_partial_isomorphism() const {
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      const auto& [la, ra] = pairs[a];
      const auto& [lb, rb] = pairs[b];
      if (la == lb && ra != rb) return false;
      if (ra == rb && la != lb) return false;
      if (left->le(la, lb) != right->le(ra, rb)) return false;
    }
  return true;
}

namespace {

struct Solver {
  const FinitePoset& left;
  const FinitePoset& right;
  std::unordered_map<std::string, bool> memo;
  // right-side indices sharing the left element's name, tried first; makes
  // play between identical structures near-linear
  std::vector<std::optional<std::size_t>> same_name_lr, same_name_rl;

  Solver(const FinitePoset& l, const FinitePoset& r) : left(l), right(r) {
    same_name_lr.resize(left.size());
    same_name_rl.resize(right.size());
    for (std::size_t i = 0; i < left.size(); ++i)
      same_name_lr[i] = right.index_of(left.element(i));
    for (std::size_t i = 0; i < right.size(); ++i)
      same_name_rl[i] = left.index_of(right.element(i));
  }

  static std::string key(const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                         std::size_t k) {
    std::string s;
    s.reserve(pairs.size() * 2 + 1);
    for (const auto& [a, b] : pairs) {
      s.push_back(static_cast<char>(a));
      s.push_back(static_cast<char>(b));
    }
    s.push_back(static_cast<char>(k));
    return s;
  }

  // the played pairs stay consistent by construction; a new pair must match
  // every existing one
  bool consistent(const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                  std::size_t a, std::size_t b) const {
    for (const auto& [x, y] : pairs) {
      if (a == x && b != y) return false;
      if (b == y && a != x) return false;
      if (left.le(a, x) != right.le(b, y)) return false;
      if (left.le(x, a) != right.le(y, b)) return false;
    }
    return true;
  }

  static void insert_sorted(std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                            std::pair<std::size_t, std::size_t> p) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), p);
    if (it != pairs.end() && *it == p) return;
    pairs.insert(it, p);
  }

  bool duplicator_wins(std::vector<std::pair<std::size_t, std::size_t>> pairs,
                       std::size_t k) {
    if (k == 0) return true;
    std::string id = key(pairs, k);
    auto hit = memo.find(id);
    if (hit != memo.end()) return hit->second;

    bool win = true;
    // spoiler picks on the left
    for (std::size_t a = 0; a < left.size() && win; ++a) {
      bool answered = false;
      if (auto mirror = same_name_lr[a]; mirror && consistent(pairs, a, *mirror)) {
        auto next = pairs;
        insert_sorted(next, {a, *mirror});
        if (duplicator_wins(std::move(next), k - 1)) answered = true;
      }
      for (std::size_t b = 0; b < right.size() && !answered; ++b) {
        if (!consistent(pairs, a, b)) continue;
        auto next = pairs;
        insert_sorted(next, {a, b});
        if (duplicator_wins(std::move(next), k - 1)) answered = true;
      }
      if (!answered) win = false;
    }
    // spoiler picks on the right
    for (std::size_t b = 0; b < right.size() && win; ++b) {
      bool answered = false;
      if (auto mirror = same_name_rl[b]; mirror && consistent(pairs, *mirror, b)) {
        auto next = pairs;
        insert_sorted(next, {*mirror, b});
        if (duplicator_wins(std::move(next), k - 1)) answered = true;
      }
      for (std::size_t a = 0; a < left.size() && !answered; ++a) {
        if (!consistent(pairs, a, b)) continue;
        auto next = pairs;
        insert_sorted(next, {a, b});
        if (duplicator_wins(std::move(next), k - 1)) answered = true;
      }
      if (!answered) win = false;
    }
    memo.emplace(std::move(id), win);
    return win;
  }
};

std::vector<std::pair<std::size_t, std::size_t>> pin_pairs(
    const FinitePoset& left, const std::vector<std::string>& left_pins,
    const FinitePoset& right, const std::vector<std::string>& right_pins) {
  if (left_pins.size() != right_pins.size())
    throw semantic_error("pin tuples must have equal length");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < left_pins.size(); ++i)
    pairs.emplace_back(left.require_index(left_pins[i]),
                       right.require_index(right_pins[i]));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

bool ef_wins(const FinitePoset& left, const std::vector<std::string>& left_pins,
             const FinitePoset& right, const std::vector<std::string>& right_pins,
             std::size_t k) {
  auto pairs = pin_pairs(left, left_pins, right, right_pins);
  GamePosition start{&left, &right, pairs, k};
  if (!start.pairs_form_partial_isomorphism()) return false;
  Solver solver(left, right);
  return solver.duplicator_wins(std::move(pairs), k);
}

bool equiv_k(const FinitePoset& left, const FinitePoset& right, std::size_t k) {
  return ef_wins(left, {}, right, {}, k);
}

std::optional<std::size_t> distinguishing_rank(const FinitePoset& left,
                                               const FinitePoset& right,
                                               std::size_t cap) {
  for (std::size_t k = 0; k <= cap; ++k)
    if (!equiv_k(left, right, k)) return k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Witness playout and replay

Json GameResult::to_json() const {
  Json j;
  j["winner"] = second_player_wins ? "II" : "I";
  j["k"] = k;
  Json moves = Json::array();
  for (const auto& m : trace) {
    Json mv;
    mv["round"] = m.round;
    mv["player"] = m.by_spoiler ? "I" : "II";
    mv["side"] = m.left_side ? "left" : "right";
    mv["element"] = m.element;
    moves.push_back(std::move(mv));
  }
  j["trace"] = std::move(moves);
  return j;
}

GameResult game_result_from_json(const Json& j) {
  GameResult r;
  if (!j.is_object() || !j.contains("winner") || !j.contains("k") ||
      !j.contains("trace"))
    throw parse_error("game json needs winner/k/trace");
  r.second_player_wins = j["winner"].get<std::string>() == "II";
  r.k = j["k"].get<std::size_t>();
  for (const auto& mv : j["trace"]) {
    GameMove m;
    m.round = mv["round"].get<std::size_t>();
    m.by_spoiler = mv["player"].get<std::string>() == "I";
    m.left_side = mv["side"].get<std::string>() == "left";
    m.element = mv["element"].get<std::string>();
    r.trace.push_back(std::move(m));
  }
  return r;
}

GameResult ef_game(const FinitePoset& left, const std::vector<std::string>& left_pins,
                   const FinitePoset& right, const std::vector<std::string>& right_pins,
                   std::size_t k) {
  GameResult result;
  result.k = k;
  result.second_player_wins = ef_wins(left, left_pins, right, right_pins, k);

  Solver solver(left, right);
  auto pairs = pin_pairs(left, left_pins, right, right_pins);
  GamePosition start{&left, &right, pairs, k};
  bool alive = start.pairs_form_partial_isomorphism();

  for (std::size_t round = 1; round <= k && alive; ++round) {
    std::size_t rounds_after = k - round;
    // Player I's move: when I wins, pick a choice II cannot answer well;
    // otherwise walk the left side for variety.
    bool pick_left = true;
    std::size_t pick = (round - 1) % left.size();
    if (!result.second_player_wins) {
      bool found = false;
      for (std::size_t a = 0; a < left.size() && !found; ++a) {
        bool answered = false;
        for (std::size_t b = 0; b < right.size() && !answered; ++b) {
          if (!solver.consistent(pairs, a, b)) continue;
          auto next = pairs;
          Solver::insert_sorted(next, {a, b});
          if (solver.duplicator_wins(std::move(next), rounds_after)) answered = true;
        }
        if (!answered) { pick_left = true; pick = a; found = true; }
      }
      for (std::size_t b = 0; b < right.size() && !found; ++b) {
        bool answered = false;
        for (std::size_t a = 0; a < left.size() && !answered; ++a) {
          if (!solver.consistent(pairs, a, b)) continue;
          auto next = pairs;
          Solver::insert_sorted(next, {a, b});
          if (solver.duplicator_wins(std::move(next), rounds_after)) answered = true;
        }
        if (!answered) { pick_left = false; pick = b; found = true; }
      }
    }
    result.trace.push_back({round, true, pick_left,
                            pick_left ? left.element(pick) : right.element(pick)});

    // Player II's response: winning when possible, else first consistent,
    // else first element
    std::size_t reply = 0;
    bool replied = false;
    const std::size_t reply_domain = pick_left ? right.size() : left.size();
    for (std::size_t r = 0; r < reply_domain && !replied; ++r) {
      std::size_t a = pick_left ? pick : r;
      std::size_t b = pick_left ? r : pick;
      if (!solver.consistent(pairs, a, b)) continue;
      auto next = pairs;
      Solver::insert_sorted(next, {a, b});
      if (solver.duplicator_wins(std::move(next), rounds_after)) {
        reply = r;
        replied = true;
      }
    }
    if (!replied) {
      for (std::size_t r = 0; r < reply_domain && !replied; ++r) {
        std::size_t a = pick_left ? pick : r;
        std::size_t b = pick_left ? r : pick;
        if (solver.consistent(pairs, a, b)) {
          reply = r;
          replied = true;
        }
      }
    }
    result.trace.push_back({round, false, !pick_left,
                            pick_left ? right.element(reply) : left.element(reply)});

    std::size_t a = pick_left ? pick : reply;
    std::size_t b = pick_left ? reply : pick;
    if (!solver.consistent(pairs, a, b)) alive = false;
    Solver::insert_sorted(pairs, {a, b});
  }
  return result;
}

bool ef_replay(const FinitePoset& left, const std::vector<std::string>& left_pins,
               const FinitePoset& right, const std::vector<std::string>& right_pins,
               const GameResult& claimed) {
  auto pairs = pin_pairs(left, left_pins, right, right_pins);
  GamePosition pos{&left, &right, pairs, claimed.k};
  bool alive = pos.pairs_form_partial_isomorphism();

  if (claimed.trace.size() % 2 != 0) return false;
  std::size_t rounds = claimed.trace.size() / 2;
  if (rounds > claimed.k) return false;

  for (std::size_t r = 0; r < rounds; ++r) {
    const GameMove& first = claimed.trace[2 * r];
    const GameMove& second = claimed.trace[2 * r + 1];
    if (!first.by_spoiler || second.by_spoiler) return false;
    if (first.round != r + 1 || second.round != r + 1) return false;
    if (first.left_side == second.left_side) return false;
    const GameMove& lmove = first.left_side ? first : second;
    const GameMove& rmove = first.left_side ? second : first;
    auto a = left.index_of(lmove.element);
    auto b = right.index_of(rmove.element);
    if (!a || !b) return false;
    pos.pairs.emplace_back(*a, *b);
    if (!pos.pairs_form_partial_isomorphism()) alive = false;
  }
  if (claimed.second_player_wins)
    return alive && rounds == claimed.k;
  return !alive;
}

}  // namespace posetlab
