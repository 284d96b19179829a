#include "fld.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace posetlab {

std::string to_string(DecompMode mode) {
  return mode == DecompMode::Fld1 ? "fld1" : "fld0";
}

DecompMode decomp_mode_from_string(const std::string& text) {
  if (text == "fld1") return DecompMode::Fld1;
  if (text == "fld0") return DecompMode::Fld0;
  throw parse_error("unknown mode \"" + text + "\" (want fld0 or fld1)");
}

Json Decomposition::to_json() const {
  Json j;
  j["index"] = poset_to_json(index);
  Json b = Json::object();
  Json r = Json::object();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    b[index.element(i)] = blocks[i];
    r[index.element(i)] = roots[i];
  }
  j["blocks"] = std::move(b);
  j["roots"] = std::move(r);
  j["mode"] = to_string(mode);
  return j;
}

namespace {

// -1: every x in a is strictly below every y in b; +1 dual; 0 all pairs
// incomparable; nullopt: mixed, not autonomous.
std::optional<int> block_relation(const FinitePoset& x,
                                  const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b) {
  int cat = 2;  // unset
  for (std::size_t p : a)
    for (std::size_t q : b) {
      int c;
      if (x.le(p, q))
        c = -1;
      else if (x.le(q, p))
        c = 1;
      else
        c = 0;
      if (cat == 2)
        cat = c;
      else if (cat != c)
        return std::nullopt;
    }
  return cat;
}

bool autonomous(const FinitePoset& x,
                const std::vector<std::vector<std::size_t>>& blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if (!block_relation(x, blocks[i], blocks[j])) return false;
  return true;
}

std::optional<std::size_t> block_greatest(const FinitePoset& x,
                                          const std::vector<std::size_t>& block) {
  for (std::size_t r : block) {
    bool top = true;
    for (std::size_t b : block)
      if (!x.le(b, r)) { top = false; break; }
    if (top) return r;
  }
  return std::nullopt;
}

std::optional<std::size_t> block_least(const FinitePoset& x,
                                       const std::vector<std::size_t>& block) {
  for (std::size_t r : block) {
    bool bottom = true;
    for (std::size_t b : block)
      if (!x.le(r, b)) { bottom = false; break; }
    if (bottom) return r;
  }
  return std::nullopt;
}

void for_each_partition(
    std::size_t n,
    const std::function<void(const std::vector<std::vector<std::size_t>>&)>& fn) {
  // restricted growth strings
  std::vector<std::size_t> label(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                          std::size_t used) {
    if (i == n) {
      std::vector<std::vector<std::size_t>> blocks(used);
      for (std::size_t k = 0; k < n; ++k) blocks[label[k]].push_back(k);
      fn(blocks);
      return;
    }
    for (std::size_t c = 0; c <= used && c < n; ++c) {
      label[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<std::vector<std::vector<std::size_t>>> autonomous_partitions(
    const FinitePoset& x, std::size_t budget) {
  if (x.size() > budget)
    throw budget_error("partition enumeration budget exceeded: " +
                       std::to_string(x.size()) + " elements");
  std::vector<std::vector<std::vector<std::size_t>>> out;
  for_each_partition(x.size(), [&](const std::vector<std::vector<std::size_t>>& blocks) {
    if (autonomous(x, blocks)) out.push_back(blocks);
  });
  return out;
}

std::vector<Decomposition> enumerate_decompositions(const FinitePoset& x,
                                                    DecompMode mode,
                                                    std::size_t budget) {
  if (x.size() > budget)
    throw budget_error("partition enumeration budget exceeded: " +
                       std::to_string(x.size()) + " elements");
  std::vector<Decomposition> out;
  for_each_partition(x.size(), [&](std::vector<std::vector<std::size_t>> blocks) {
    std::vector<std::size_t> roots;
    roots.reserve(blocks.size());
    for (const auto& block : blocks) {
      auto r = mode == DecompMode::Fld1 ? block_greatest(x, block)
                                        : block_least(x, block);
      if (!r) return;
      roots.push_back(*r);
    }
    if (!autonomous(x, blocks)) return;

    // canonical block numbering: ascending least element name
    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), 0);
    auto least_name = [&](std::size_t b) -> const std::string& {
      const std::string* best = &x.element(blocks[b][0]);
      for (std::size_t e : blocks[b])
        if (x.element(e) < *best) best = &x.element(e);
      return *best;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return least_name(a) < least_name(b);
    });

    const std::size_t n = blocks.size();
    std::vector<std::string> idx_names;
    for (std::size_t i = 0; i < n; ++i) idx_names.push_back(std::to_string(i));
    std::vector<uint8_t> idx_matrix(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      idx_matrix[i * n + i] = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        auto rel = block_relation(x, blocks[order[i]], blocks[order[j]]);
        if (rel && *rel == -1) idx_matrix[i * n + j] = 1;
      }
    }
    Decomposition d;
    d.parent = x;
    d.index = FinitePoset(std::move(idx_names), std::move(idx_matrix));
    d.mode = mode;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> names;
      for (std::size_t e : blocks[order[i]]) names.push_back(x.element(e));
      std::sort(names.begin(), names.end());
      d.blocks.push_back(std::move(names));
      d.roots.push_back(x.element(roots[order[i]]));
    }
    out.push_back(std::move(d));
  });
  std::sort(out.begin(), out.end(), [](const Decomposition& a, const Decomposition& b) {
    if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size();
    return a.blocks < b.blocks;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Witness formulas

namespace {

Formula strictly_below(const std::string& lo, const std::string& hi) {
  return Formula::land(Formula::le(lo, hi),
                       Formula::lnot(Formula::eq(lo, hi)));
}

Formula incomparable_with(const std::string& a, const std::string& b) {
  return Formula::land(Formula::lnot(Formula::le(a, b)),
                       Formula::lnot(Formula::le(b, a)));
}

Formula implies(Formula a, Formula b) {
  return Formula::lor(Formula::lnot(std::move(a)), std::move(b));
}

}  // namespace

Assignment WitnessFormulas::params_for(const std::vector<std::string>& roots) const {
  if (roots.size() != params.size())
    throw semantic_error("root tuple length mismatch");
  Assignment a;
  for (std::size_t i = 0; i < params.size(); ++i) a[params[i]] = roots[i];
  return a;
}

WitnessFormulas build_witness_formulas(const Decomposition& d,
                                       const std::vector<Formula>& sentences) {
  const std::size_t n = d.block_count();
  WitnessFormulas w;
  w.index = d.index;
  w.mode = d.mode;
  for (std::size_t i = 0; i < n; ++i) w.params.push_back("w" + std::to_string(i));

  const std::string& v = w.subject;
  const std::string& u = w.subject2;

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Formula> parts;
    parts.push_back(d.mode == DecompMode::Fld1 ? Formula::le(v, w.params[i])
                                               : Formula::le(w.params[i], v));
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (d.index.le(j, i))
        parts.push_back(strictly_below(w.params[j], v));
      else if (d.index.le(i, j))
        parts.push_back(strictly_below(v, w.params[j]));
      else
        parts.push_back(incomparable_with(w.params[j], v));
    }
    w.block.push_back(Formula::conj(parts));
  }

  {
    std::vector<Formula> cases;
    for (std::size_t i = 0; i < n; ++i)
      cases.push_back(Formula::land(w.block[i].substitute(v, u), w.block[i]));
    w.equivalence = Formula::disj(cases);
  }

  {
    std::vector<Formula> cases;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Formula> parts;
      parts.push_back(w.block[i]);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) parts.push_back(Formula::lnot(w.block[j]));
      cases.push_back(Formula::conj(parts));
    }
    w.partition = Formula::forall(v, Formula::disj(cases));
  }

  {
    std::vector<Formula> clauses;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Formula both = Formula::land(w.block[i].substitute(v, u), w.block[j]);
        Formula order = d.index.le(i, j) ? Formula::le(u, v)
                                         : Formula::lnot(Formula::le(u, v));
        clauses.push_back(Formula::forall(
            u, Formula::forall(v, implies(std::move(both), std::move(order)))));
      }
    w.ordering = clauses.empty() ? Formula::tautology() : Formula::conj(clauses);
  }

  for (std::size_t i = 0; i < n; ++i) {
    Formula bound = d.mode == DecompMode::Fld1 ? Formula::le(v, w.params[i])
                                               : Formula::le(w.params[i], v);
    w.root.push_back(Formula::forall(v, implies(w.block[i], std::move(bound))));
  }

  if (!sentences.empty()) {
    if (sentences.size() != n)
      throw semantic_error("need one sentence per index element");
    std::vector<Formula> relativized;
    for (std::size_t i = 0; i < n; ++i) {
      if (!sentences[i].free_variables().empty())
        throw semantic_error("sentence payloads must be closed formulas");
      relativized.push_back(relativize(sentences[i], w.block[i], w.params, v));
    }
    w.sentences = sentences;
    w.payload = Formula::conj(relativized);
  }

  std::vector<Formula> all;
  all.push_back(w.partition);
  all.push_back(w.ordering);
  for (const auto& r : w.root) all.push_back(r);
  if (w.payload) all.push_back(*w.payload);
  w.combined = Formula::conj(all);
  return w;
}

BlockDefinabilityReport verify_block_definability(const Decomposition& d) {
  WitnessFormulas w = build_witness_formulas(d);
  Assignment params = w.params_for(d.roots);
  BlockDefinabilityReport report;
  for (std::size_t i = 0; i < d.block_count(); ++i) {
    DefinableSet set = definable_set(d.parent, w.block[i], params, w.subject);
    std::vector<std::string> actual = set.members;
    std::sort(actual.begin(), actual.end());
    if (actual != d.blocks[i])
      report.violations.push_back({i, d.blocks[i], actual});
  }
  return report;
}

std::vector<std::vector<std::string>> equivalence_classes(
    const FinitePoset& x, const WitnessFormulas& w,
    const std::vector<std::string>& roots) {
  Assignment params = w.params_for(roots);
  EvalEnv env;
  for (const auto& [var, elem] : params) env.emplace_back(var, x.require_index(elem));
  env.emplace_back(w.subject2, 0);
  env.emplace_back(w.subject, 0);
  const std::size_t n = x.size();
  std::vector<std::size_t> cls(n, n);
  std::vector<std::vector<std::string>> classes;
  for (std::size_t a = 0; a < n; ++a) {
    if (cls[a] != n) continue;
    cls[a] = classes.size();
    std::vector<std::string> members{x.element(a)};
    for (std::size_t b = a + 1; b < n; ++b) {
      if (cls[b] != n) continue;
      env[env.size() - 2].second = a;
      env[env.size() - 1].second = b;
      if (evaluate_env(x, w.equivalence, env)) {
        cls[b] = cls[a];
        members.push_back(x.element(b));
      }
    }
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

// ---------------------------------------------------------------------------
// Transfer

namespace {

bool verify_transferred(const FinitePoset& y, const WitnessFormulas& w,
                        const std::vector<std::vector<std::size_t>>& blocks,
                        const std::vector<std::size_t>& roots) {
  const std::size_t n = blocks.size();
  // partition with nonempty cells
  std::vector<bool> seen(y.size(), false);
  std::size_t covered = 0;
  for (const auto& block : blocks) {
    if (block.empty()) return false;
    for (std::size_t e : block) {
      if (seen[e]) return false;
      seen[e] = true;
      ++covered;
    }
  }
  if (covered != y.size()) return false;
  // inter-block order must follow the index exactly
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto rel = block_relation(y, blocks[i], blocks[j]);
      if (!rel) return false;
      bool below = w.index.le(i, j);
      bool above = w.index.le(j, i);
      int want = below ? -1 : (above ? 1 : 0);
      if (*rel != want) return false;
    }
  // roots sit in their blocks at the right end
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(blocks[i].begin(), blocks[i].end(), roots[i]) == blocks[i].end())
      return false;
    auto r = w.mode == DecompMode::Fld1 ? block_greatest(y, blocks[i])
                                        : block_least(y, blocks[i]);
    if (!r || *r != roots[i]) return false;
  }
  // payload sentences hold on the induced blocks
  for (std::size_t i = 0; i < w.sentences.size(); ++i) {
    FinitePoset sub = y.induced(blocks[i]);
    if (!evaluate(sub, w.sentences[i])) return false;
  }
  return true;
}

}  // namespace

std::optional<Decomposition> transfer_decomposition(const FinitePoset& y,
                                                    const WitnessFormulas& w,
                                                    std::size_t tuple_budget) {
  const std::size_t n = w.block.size();
  const std::size_t m = y.size();
  double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<double>(m);
  if (total > static_cast<double>(tuple_budget))
    throw budget_error("transfer tuple search budget exceeded");

  std::vector<std::size_t> tuple(n, 0);
  EvalEnv env;
  for (std::size_t i = 0; i < n; ++i) env.emplace_back(w.params[i], 0);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) env[i].second = tuple[i];
    if (evaluate_env(y, w.combined, env)) {
      std::vector<std::vector<std::size_t>> blocks(n);
      env.emplace_back(w.subject, 0);
      for (std::size_t e = 0; e < m; ++e) {
        env.back().second = e;
        for (std::size_t i = 0; i < n; ++i)
          if (evaluate_env(y, w.block[i], env)) blocks[i].push_back(e);
      }
      env.pop_back();
      if (verify_transferred(y, w, blocks, tuple)) {
        Decomposition d;
        d.parent = y;
        d.index = w.index;
        d.mode = w.mode;
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<std::string> names;
          for (std::size_t e : blocks[i]) names.push_back(y.element(e));
          std::sort(names.begin(), names.end());
          d.blocks.push_back(std::move(names));
          d.roots.push_back(y.element(tuple[i]));
        }
        return d;
      }
    }
    std::size_t k = n;
    while (k > 0) {
      if (++tuple[k - 1] < m) break;
      tuple[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return std::nullopt;
}

bool validate_decomposition(const Decomposition& d, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  const std::size_t n = d.block_count();
  if (n == 0 || d.index.size() != n || d.roots.size() != n)
    return fail("shape mismatch");
  std::set<std::string> seen;
  std::size_t covered = 0;
  for (const auto& block : d.blocks) {
    if (block.empty()) return fail("empty block");
    for (const auto& e : block) {
      if (!d.parent.index_of(e)) return fail("block element outside parent");
      if (!seen.insert(e).second) return fail("blocks overlap");
      ++covered;
    }
  }
  if (covered != d.parent.size()) return fail("blocks do not cover the domain");

  std::vector<std::vector<std::size_t>> idx_blocks;
  for (const auto& block : d.blocks) {
    std::vector<std::size_t> ids;
    for (const auto& e : block) ids.push_back(d.parent.require_index(e));
    idx_blocks.push_back(std::move(ids));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto rel = block_relation(d.parent, idx_blocks[i], idx_blocks[j]);
      if (!rel) return fail("blocks not order-autonomous");
      int want = d.index.le(i, j) ? -1 : (d.index.le(j, i) ? 1 : 0);
      if (*rel != want) return fail("inter-block order disagrees with the index");
    }
  for (std::size_t i = 0; i < n; ++i) {
    auto r = d.mode == DecompMode::Fld1 ? block_greatest(d.parent, idx_blocks[i])
                                        : block_least(d.parent, idx_blocks[i]);
    if (!r) return fail("block lacks the required root");
    if (d.parent.element(*r) != d.roots[i]) return fail("recorded root is wrong");
  }
  // parent is the lexicographic sum of its induced blocks
  std::map<std::string, FinitePoset> summands;
  for (std::size_t i = 0; i < n; ++i)
    summands.emplace(d.index.element(i), d.parent.induced(idx_blocks[i]));
  FinitePoset rebuilt = lex_sum(d.index, summands);
  if (!(canonical_form(rebuilt) == canonical_form(d.parent)))
    return fail("lexicographic sum of the blocks is not isomorphic to the parent");
  return true;
}

Decomposition decomposition_from_json(const Json& j, FinitePoset parent) {
  if (!j.is_object() || !j.contains("index") || !j.contains("blocks") ||
      !j.contains("roots") || !j.contains("mode"))
    throw parse_error("decomposition json needs index/blocks/roots/mode");
  Decomposition d;
  d.parent = std::move(parent);
  d.index = poset_from_json(j["index"]);
  d.mode = decomp_mode_from_string(j["mode"].get<std::string>());
  for (std::size_t i = 0; i < d.index.size(); ++i) {
    const std::string& key = d.index.element(i);
    if (!j["blocks"].contains(key) || !j["roots"].contains(key))
      throw parse_error("decomposition json missing block or root for \"" + key + "\"");
    std::vector<std::string> block =
        j["blocks"][key].get<std::vector<std::string>>();
    std::sort(block.begin(), block.end());
    d.blocks.push_back(std::move(block));
    d.roots.push_back(j["roots"][key].get<std::string>());
  }
  return d;
}

}  // namespace posetlab
