#include "verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "catalog.hpp"
#include "classes.hpp"
#include "ef.hpp"
#include "fld.hpp"

namespace posetlab {

const std::vector<Formula>& sentence_corpus() {
  static const std::vector<Formula> corpus = [] {
    const char* texts[] = {
        // sentences
        "exists t . forall u . u <= t",
        "exists t . forall u . t <= u",
        "forall u . u <= u",
        "forall u . forall t . ((u <= t & t <= u) -> u = t)",
        "forall u . forall t . (u <= t | t <= u)",
        "exists u . exists t . (!(u <= t) & !(t <= u))",
        "exists u . exists t . (u <= t & !(u = t))",
        "forall u . exists t . u <= t",
        "forall u . exists t . t <= u",
        "exists u . forall t . (u <= t -> u = t)",
        "forall u . forall t . forall s . ((u <= t & t <= s) -> u <= s)",
        "exists u . exists t . exists s . (u <= t & t <= s & !(u = t) & !(t = s))",
        "forall u . ((exists t . (t <= u & !(t = u))) | "
        "(exists t . (u <= t & !(u = t))))",
        "exists u . exists t . (!(u = t) & (forall s . (s = u | s = t)))",
        "forall u . forall t . (u = t | !(u <= t) | !(t <= u))",
        "exists t . forall u . (u <= t | t <= u)",
        "forall u . forall t . ((u <= t & !(u = t)) -> "
        "exists s . (u <= s & s <= t & !(s = u) & !(s = t)))",
        "exists u . forall t . (t <= u -> t = u)",
        "exists u . exists t . (u <= t & t <= u & !(u = t))",
        "forall u . forall t . (u <= t -> exists s . (u <= s & s <= t))",
        // open formulas
        "x <= y",
        "exists t . (x <= t & y <= t)",
        "forall t . (t <= x -> t <= y)",
        "x = x",
        "exists t . (t <= x & !(t = x))",
    };
    std::vector<Formula> out;
    for (const char* t : texts) out.push_back(parse_formula(t));
    return out;
  }();
  return corpus;
}

const std::vector<Relativizer>& relativizer_corpus() {
  static const std::vector<Relativizer> corpus = [] {
    std::vector<Relativizer> out;
    auto add = [&](const char* text, std::vector<std::string> params) {
      out.push_back({parse_formula(text), std::move(params), "v"});
    };
    add("v <= w0", {"w0"});
    add("w0 <= v", {"w0"});
    add("v <= w0 | w0 <= v", {"w0"});
    add("!(v = w0)", {"w0"});
    add("v = v", {});
    add("v <= w0 | v <= w1", {"w0", "w1"});
    add("w0 <= v & v <= w1", {"w0", "w1"});
    return out;
  }();
  return corpus;
}

bool chains_equivalent_expected(std::size_t m, std::size_t n, std::size_t k) {
  if (m == n) return true;
  std::size_t threshold = (std::size_t{1} << k) - 1;
  return m >= threshold && n >= threshold;
}

Json SuiteReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["pass"] = pass;
  j["checks"] = checks;
  if (skipped) j["skipped"] = skipped;
  j["failures"] = Json::array();
  for (const auto& f : failures) j["failures"].push_back(f);
  j["params"] = params;
  return j;
}

namespace {

Json params_json(const SuiteParams& p) {
  Json j;
  j["bound"] = p.bound;
  j["k"] = p.k;
  j["seed"] = p.seed;
  j["samples"] = p.samples;
  return j;
}

SuiteReport make_report(const std::string& name, const SuiteParams& p) {
  SuiteReport r;
  r.suite = name;
  r.params = params_json(p);
  return r;
}

std::vector<std::string> sorted_free_vars(const Formula& f) {
  auto s = f.free_variables();
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------

SuiteReport suite_relativization(const SuiteParams& p) {
  SuiteReport report = make_report("relativization", p);
  const auto& sentences = sentence_corpus();
  const auto& guards = relativizer_corpus();
  for (const auto& x : all_posets_upto(p.bound)) {
    for (const auto& rel : guards) {
      // relativized forms are per (guard, sentence), reuse across tuples
      std::vector<Formula> transformed;
      std::vector<std::vector<std::string>> frees;
      for (const auto& psi : sentences) {
        transformed.push_back(relativize(psi, rel.guard, rel.params, rel.subject));
        frees.push_back(sorted_free_vars(psi));
      }
      const std::size_t m = rel.params.size();
      std::vector<std::size_t> tuple(m, 0);
      while (true) {
        Assignment params;
        for (std::size_t i = 0; i < m; ++i)
          params[rel.params[i]] = x.element(tuple[i]);
        DefinableSet d = definable_set(x, rel.guard, params, rel.subject);
        if (!d.empty()) {
          FinitePoset sub = d.induced();
          for (std::size_t s = 0; s < sentences.size(); ++s) {
            const auto& vars = frees[s];
            std::vector<std::size_t> pick(vars.size(), 0);
            while (true) {
              Assignment inner, outer = params;
              for (std::size_t i = 0; i < vars.size(); ++i) {
                inner[vars[i]] = sub.element(pick[i]);
                outer[vars[i]] = sub.element(pick[i]);
              }
              bool lhs = evaluate(sub, sentences[s], inner);
              bool rhs = evaluate(x, transformed[s], outer);
              report.check(lhs == rhs, [&] {
                Json cx;
                cx["poset"] = poset_to_json(x);
                cx["guard"] = rel.guard.to_string();
                cx["sentence"] = sentences[s].to_string();
                cx["params"] = params;
                cx["tuple"] = inner;
                cx["restricted"] = lhs;
                cx["relativized"] = rhs;
                return cx;
              });
              std::size_t i = vars.size();
              while (i > 0) {
                if (++pick[i - 1] < sub.size()) break;
                pick[i - 1] = 0;
                --i;
              }
              if (i == 0) break;
            }
          }
        } else {
          ++report.skipped;
        }
        std::size_t i = m;
        while (i > 0) {
          if (++tuple[i - 1] < x.size()) break;
          tuple[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
  }
  return report;
}

SuiteReport suite_w_invariance(const SuiteParams& p) {
  SuiteReport report = make_report("w-invariance", p);
  for (const auto& x : all_posets_upto(p.bound)) {
    // all relabelings of the representative
    std::vector<std::string> names = x.elements();
    std::sort(names.begin(), names.end());
    for (const auto& rel : relativizer_corpus()) {
      DefinableSpectrum expected =
          definable_spectrum(x, rel.guard, rel.params, rel.subject);
      std::vector<std::string> perm = names;
      do {
        std::map<std::string, std::string> table;
        for (std::size_t i = 0; i < names.size(); ++i) table[names[i]] = perm[i];
        FinitePoset y = x.renamed([&](const std::string& e) { return table.at(e); });
        DefinableSpectrum got =
            definable_spectrum(y, rel.guard, rel.params, rel.subject);
        report.check(got.forms == expected.forms, [&] {
          Json cx;
          cx["poset"] = poset_to_json(x);
          cx["relabeled"] = poset_to_json(y);
          cx["guard"] = rel.guard.to_string();
          return cx;
        });
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return report;
}

SuiteReport suite_block_definability(const SuiteParams& p) {
  SuiteReport report = make_report("block-definability", p);
  for (const auto& x : all_posets_upto(p.bound)) {
    for (DecompMode mode : {DecompMode::Fld1, DecompMode::Fld0}) {
      for (const auto& d : enumerate_decompositions(x, mode)) {
        BlockDefinabilityReport blocks = verify_block_definability(d);
        report.check(blocks.ok(), [&] {
          Json cx;
          cx["poset"] = poset_to_json(x);
          cx["decomposition"] = d.to_json();
          return cx;
        });
        WitnessFormulas w = build_witness_formulas(d);
        auto classes = equivalence_classes(x, w, d.roots);
        std::vector<std::vector<std::string>> want = d.blocks;
        std::sort(want.begin(), want.end());
        report.check(classes == want, [&] {
          Json cx;
          cx["poset"] = poset_to_json(x);
          cx["decomposition"] = d.to_json();
          cx["classes"] = classes;
          return cx;
        });
        // the defining sentences hold with the roots as parameters
        Assignment params = w.params_for(d.roots);
        bool holds = evaluate(x, w.combined, params);
        report.check(holds, [&] {
          Json cx;
          cx["poset"] = poset_to_json(x);
          cx["decomposition"] = d.to_json();
          cx["formula"] = w.combined.to_string();
          return cx;
        });
      }
    }
  }
  return report;
}

SuiteReport suite_transfer_self(const SuiteParams& p) {
  SuiteReport report = make_report("transfer-self", p);
  for (const auto& x : all_posets_upto(p.bound)) {
    for (DecompMode mode : {DecompMode::Fld1, DecompMode::Fld0}) {
      for (const auto& d : enumerate_decompositions(x, mode)) {
        WitnessFormulas w = build_witness_formulas(d);
        auto transferred = transfer_decomposition(x, w);
        bool ok = transferred.has_value();
        std::string why;
        if (ok) ok = validate_decomposition(*transferred, &why);
        report.check(ok, [&] {
          Json cx;
          cx["poset"] = poset_to_json(x);
          cx["decomposition"] = d.to_json();
          cx["reason"] = transferred ? why : "no witness tuple found";
          return cx;
        });
      }
    }
  }
  return report;
}

SuiteReport suite_transfer_sampled(const SuiteParams& p) {
  SuiteReport report = make_report("transfer-sampled", p);
  std::mt19937_64 rng(p.seed);
  std::vector<FinitePoset> pool = all_posets_upto(std::min<std::size_t>(p.bound, 5));
  // targets beyond the source sizes make the transfers non-trivial
  std::vector<FinitePoset> targets = pool;
  for (std::size_t n = 2; n <= 6; ++n) targets.push_back(chain(n));

  std::size_t successes = 0;
  std::size_t attempts = 0;
  const std::size_t attempt_cap = p.samples * 400;
  while (successes < p.samples && attempts < attempt_cap) {
    ++attempts;
    const FinitePoset& x = pool[rng() % pool.size()];
    DecompMode mode = (rng() % 2) ? DecompMode::Fld1 : DecompMode::Fld0;
    auto decomps = enumerate_decompositions(x, mode);
    if (decomps.empty()) continue;
    const Decomposition& d = decomps[rng() % decomps.size()];
    const FinitePoset& y = targets[rng() % targets.size()];
    // every third sample carries sentence payloads; the root sentence holds
    // on each source block by construction, so self-witnessing is preserved
    std::vector<Formula> sentences;
    if (attempts % 3 == 0) {
      Formula tau = mode == DecompMode::Fld1
                        ? parse_formula("exists t . forall u . u <= t")
                        : parse_formula("exists t . forall u . t <= u");
      sentences.assign(d.block_count(), tau);
    }
    WitnessFormulas w = build_witness_formulas(d, sentences);

    // independent satisfiability scan for the combined formula
    bool satisfiable = false;
    {
      const std::size_t n = w.params.size();
      std::vector<std::size_t> tuple(n, 0);
      EvalEnv env;
      for (std::size_t i = 0; i < n; ++i) env.emplace_back(w.params[i], 0);
      while (!satisfiable) {
        for (std::size_t i = 0; i < n; ++i) env[i].second = tuple[i];
        if (evaluate_env(y, w.combined, env)) satisfiable = true;
        std::size_t i = n;
        while (i > 0) {
          if (++tuple[i - 1] < y.size()) break;
          tuple[i - 1] = 0;
          --i;
        }
        if (i == 0) break;
      }
    }
    if (!satisfiable) continue;

    auto transferred = transfer_decomposition(y, w);
    bool ok = transferred.has_value();
    std::string why = "no witness tuple found";
    if (ok) ok = validate_decomposition(*transferred, &why);
    if (ok) {
      ++successes;
      // partition, sum structure and roots sit in validate_decomposition;
      // the class partition must also match the equivalence formula, and
      // each block must satisfy its sentence payload
      auto classes = equivalence_classes(y, w, transferred->roots);
      std::vector<std::vector<std::string>> want = transferred->blocks;
      std::sort(want.begin(), want.end());
      report.check(classes == want, [&] {
        Json cx;
        cx["target"] = poset_to_json(y);
        cx["decomposition"] = transferred->to_json();
        return cx;
      });
      for (std::size_t i = 0; i < sentences.size(); ++i) {
        FinitePoset block = y.induced_by_names(transferred->blocks[i]);
        report.check(evaluate(block, sentences[i]), [&] {
          Json cx;
          cx["target"] = poset_to_json(y);
          cx["block"] = transferred->blocks[i];
          cx["sentence"] = sentences[i].to_string();
          return cx;
        });
      }
    } else {
      report.check(false, [&] {
        Json cx;
        cx["source"] = poset_to_json(x);
        cx["target"] = poset_to_json(y);
        cx["decomposition"] = d.to_json();
        cx["reason"] = why;
        return cx;
      });
    }
  }
  report.check(successes >= p.samples, [&] {
    Json cx;
    cx["successes"] = successes;
    cx["attempts"] = attempts;
    return cx;
  });
  return report;
}

SuiteReport suite_sum_associativity(const SuiteParams& p) {
  SuiteReport report = make_report("sum-associativity", p);
  const std::size_t outer_bound = std::min<std::size_t>(p.bound, 3);
  const std::size_t inner_bound = 3;
  const std::size_t leaf_bound = 2;

  std::vector<FinitePoset> outers = all_posets_upto(outer_bound);
  std::vector<FinitePoset> inners = all_posets_upto(inner_bound);
  std::vector<FinitePoset> leaves = all_posets_upto(leaf_bound);

  // bundle: an inner index, one leaf per inner element, and the inner sum
  struct Bundle {
    std::size_t inner_id;
    const FinitePoset* inner;
    std::vector<const FinitePoset*> leaves;
    FinitePoset mid;
  };
  std::vector<Bundle> bundles;
  for (std::size_t ii = 0; ii < inners.size(); ++ii) {
    const FinitePoset& inner = inners[ii];
    std::vector<const FinitePoset*> pick(inner.size(), nullptr);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == inner.size()) {
        bundles.push_back({ii, &inner, pick, lex_sum(inner, pick)});
        return;
      }
      for (const auto& leaf : leaves) {
        pick[pos] = &leaf;
        rec(pos + 1);
      }
    };
    rec(0);
  }

  for (const auto& outer : outers) {
    const std::size_t slots = outer.size();
    std::vector<std::vector<std::size_t>> perms;
    for (const auto& f : automorphisms(outer)) {
      std::vector<std::size_t> perm(slots);
      for (std::size_t i = 0; i < slots; ++i)
        perm[i] = outer.require_index(*f.image_of(outer.element(i)));
      perms.push_back(std::move(perm));
    }

    double combos_d = 1;
    for (std::size_t s = 0; s < slots; ++s)
      combos_d *= static_cast<double>(bundles.size());
    std::size_t instances, stride;
    if (p.work_cap == 0 || combos_d <= static_cast<double>(p.work_cap)) {
      instances = static_cast<std::size_t>(combos_d);
      stride = 1;
    } else {
      instances = p.work_cap;
      stride = static_cast<std::size_t>(combos_d / p.work_cap);
    }

    // the flat index only depends on the inner-index choice per slot
    std::map<std::vector<std::size_t>, FinitePoset> flat_index_memo;
    std::vector<std::size_t> choice(slots), inner_ids(slots);
    std::vector<const FinitePoset*> mids(slots), flat_leaves;
    for (std::size_t t = 0; t < instances; ++t) {
      std::size_t code = t * stride;
      for (std::size_t s = 0; s < slots; ++s) {
        choice[s] = code % bundles.size();
        code /= bundles.size();
      }
      bool minimal = true;
      for (const auto& perm : perms) {
        for (std::size_t i = 0; i < slots; ++i) {
          std::size_t mine = choice[i], theirs = choice[perm[i]];
          if (theirs < mine) { minimal = false; break; }
          if (theirs > mine) break;
        }
        if (!minimal) break;
      }
      if (!minimal) { ++report.skipped; continue; }

      flat_leaves.clear();
      for (std::size_t i = 0; i < slots; ++i) {
        const Bundle& b = bundles[choice[i]];
        mids[i] = &b.mid;
        inner_ids[i] = b.inner_id;
        for (const auto* leaf : b.leaves) flat_leaves.push_back(leaf);
      }
      FinitePoset nested = lex_sum(outer, mids);
      auto memo = flat_index_memo.find(inner_ids);
      if (memo == flat_index_memo.end()) {
        std::vector<const FinitePoset*> idx_parts(slots);
        for (std::size_t i = 0; i < slots; ++i) idx_parts[i] = bundles[choice[i]].inner;
        memo = flat_index_memo.emplace(inner_ids, lex_sum(outer, idx_parts)).first;
      }
      FinitePoset flat = lex_sum(memo->second, flat_leaves);
      report.check(nested.same_order(flat), [&] {
        Json cx;
        cx["outer"] = poset_to_json(outer);
        cx["nested"] = poset_to_json(nested);
        cx["flat"] = poset_to_json(flat);
        return cx;
      });
    }
  }
  return report;
}

// shared by the composition suite: k-equivalence classes over the catalog
struct EquivTable {
  std::vector<FinitePoset> forms;
  // equiv[k] holds ordered pairs (i, j) of equivalent forms, identity included
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> equiv;
};

EquivTable build_equiv_table(std::size_t bound, std::size_t kmax) {
  EquivTable t;
  t.forms = all_posets_upto(bound);
  t.equiv.resize(kmax + 1);
  for (std::size_t a = 0; a < t.forms.size(); ++a)
    for (std::size_t b = 0; b < t.forms.size(); ++b)
      for (std::size_t k = 1; k <= kmax; ++k)
        if (equiv_k(t.forms[a], t.forms[b], k)) t.equiv[k].emplace_back(a, b);
  return t;
}

SuiteReport suite_sum_composition(const SuiteParams& p) {
  SuiteReport report = make_report("sum-composition", p);
  EquivTable table = build_equiv_table(p.bound, p.k);
  std::vector<FinitePoset> indices = all_posets_upto(3);
  std::mt19937_64 rng(p.seed);

  for (std::size_t k = 1; k <= p.k; ++k) {
    const auto& pairs = table.equiv[k];
    std::vector<std::pair<std::size_t, std::size_t>> distinct;
    for (const auto& pr : pairs)
      if (pr.first != pr.second) distinct.push_back(pr);

    for (const auto& index : indices) {
      const std::size_t slots = index.size();
      // layer 1: all-distinct assignments; exhaustive when they fit the cap,
      // otherwise a deterministic stride sample
      const auto& source = distinct.empty() ? pairs : distinct;
      double combos_d = 1;
      for (std::size_t s = 0; s < slots; ++s)
        combos_d *= static_cast<double>(source.size());
      std::size_t instances, stride;
      if (combos_d <= static_cast<double>(p.work_cap)) {
        instances = static_cast<std::size_t>(combos_d);
        stride = 1;
      } else {
        instances = p.work_cap;
        stride = static_cast<std::size_t>(combos_d / p.work_cap);
      }
      for (std::size_t t = 0; t < instances; ++t) {
        std::size_t code = t * stride;
        std::map<std::string, FinitePoset> ls, rs;
        for (std::size_t s = 0; s < slots; ++s) {
          const auto& pr = source[code % source.size()];
          code /= source.size();
          ls.emplace(index.element(s), table.forms[pr.first]);
          rs.emplace(index.element(s), table.forms[pr.second]);
        }
        FinitePoset lsum = lex_sum(index, ls);
        FinitePoset rsum = lex_sum(index, rs);
        report.check(equiv_k(lsum, rsum, k), [&] {
          Json cx;
          cx["index"] = poset_to_json(index);
          cx["k"] = k;
          cx["left"] = poset_to_json(lsum);
          cx["right"] = poset_to_json(rsum);
          return cx;
        });
      }

      // layer 2: one distinct pair in a random slot, identity elsewhere
      if (!distinct.empty() && slots >= 2) {
        std::size_t budgeted = std::min<std::size_t>(distinct.size() * slots,
                                                     p.work_cap / 4);
        for (std::size_t trial = 0; trial < budgeted; ++trial) {
          std::size_t slot = rng() % slots;
          const auto& pr = distinct[rng() % distinct.size()];
          std::map<std::string, FinitePoset> ls, rs;
          for (std::size_t s = 0; s < slots; ++s) {
            if (s == slot) {
              ls.emplace(index.element(s), table.forms[pr.first]);
              rs.emplace(index.element(s), table.forms[pr.second]);
            } else {
              const FinitePoset& same = table.forms[rng() % table.forms.size()];
              ls.emplace(index.element(s), same);
              rs.emplace(index.element(s), same);
            }
          }
          FinitePoset lsum = lex_sum(index, ls);
          FinitePoset rsum = lex_sum(index, rs);
          report.check(equiv_k(lsum, rsum, k), [&] {
            Json cx;
            cx["index"] = poset_to_json(index);
            cx["k"] = k;
            cx["left"] = poset_to_json(lsum);
            cx["right"] = poset_to_json(rsum);
            return cx;
          });
        }
      }
    }
  }
  return report;
}

SuiteReport suite_pi_union(const SuiteParams& p) {
  SuiteReport report = make_report("pi-union", p);
  std::mt19937_64 rng(p.seed);
  std::vector<FinitePoset> indices = all_posets_upto(3);
  std::vector<FinitePoset> parts = all_posets_upto(p.bound);

  auto random_partial_iso = [&](const FinitePoset& a, const FinitePoset& b)
      -> std::optional<PartialMap> {
    for (std::size_t tries = 0; tries < 60; ++tries) {
      std::size_t want = rng() % (std::min(a.size(), b.size()) + 1);
      PartialMap f;
      std::vector<std::size_t> la(a.size()), lb(b.size());
      std::iota(la.begin(), la.end(), 0);
      std::iota(lb.begin(), lb.end(), 0);
      for (std::size_t i = la.size(); i > 1; --i)
        std::swap(la[i - 1], la[rng() % i]);
      for (std::size_t i = lb.size(); i > 1; --i)
        std::swap(lb[i - 1], lb[rng() % i]);
      for (std::size_t i = 0; i < want; ++i)
        f.pairs.emplace_back(a.element(la[i]), b.element(lb[i]));
      if (f.is_partial_isomorphism(a, b)) return f;
    }
    return std::nullopt;
  };

  for (std::size_t sample = 0; sample < p.samples; ++sample) {
    const FinitePoset& index = indices[rng() % indices.size()];
    std::map<std::string, FinitePoset> ls, rs;
    std::vector<PartialMap> pieces;
    bool built = true;
    for (std::size_t i = 0; i < index.size() && built; ++i) {
      const FinitePoset& xi = parts[rng() % parts.size()];
      const FinitePoset& yi = parts[rng() % parts.size()];
      ls.emplace(index.element(i), xi);
      rs.emplace(index.element(i), yi);
      auto f = random_partial_iso(xi, yi);
      if (!f) { built = false; break; }
      PartialMap lifted;
      for (const auto& [s, t] : f->pairs)
        lifted.pairs.emplace_back(index.element(i) + "." + s,
                                  index.element(i) + "." + t);
      pieces.push_back(std::move(lifted));
    }
    if (!built) { ++report.skipped; continue; }
    FinitePoset lsum = lex_sum(index, ls);
    FinitePoset rsum = lex_sum(index, rs);
    PartialMap whole;
    for (const auto& f : pieces)
      whole.pairs.insert(whole.pairs.end(), f.pairs.begin(), f.pairs.end());
    report.check(whole.is_partial_isomorphism(lsum, rsum), [&] {
      Json cx;
      cx["index"] = poset_to_json(index);
      cx["left"] = poset_to_json(lsum);
      cx["right"] = poset_to_json(rsum);
      Json pairs = Json::array();
      for (const auto& [s, t] : whole.pairs) pairs.push_back(Json::array({s, t}));
      cx["map"] = std::move(pairs);
      return cx;
    });

    // same-summand variant: unions of block automorphisms extend to the sum
    std::map<std::string, FinitePoset> same = ls;
    FinitePoset sum = lex_sum(index, same);
    PartialMap glued;
    for (std::size_t i = 0; i < index.size(); ++i) {
      const FinitePoset& xi = same.at(index.element(i));
      auto autos = automorphisms(xi);
      const PartialMap& g = autos[rng() % autos.size()];
      for (const auto& [s, t] : g.pairs)
        glued.pairs.emplace_back(index.element(i) + "." + s,
                                 index.element(i) + "." + t);
    }
    bool is_auto = glued.is_partial_isomorphism(sum, sum) &&
                   glued.pairs.size() == sum.size();
    report.check(is_auto, [&] {
      Json cx;
      cx["sum"] = poset_to_json(sum);
      Json pairs = Json::array();
      for (const auto& [s, t] : glued.pairs) pairs.push_back(Json::array({s, t}));
      cx["map"] = std::move(pairs);
      return cx;
    });
  }
  return report;
}

SuiteReport suite_closure_onestep(const SuiteParams& p) {
  SuiteReport report = make_report("closure-onestep", p);
  std::vector<ClassSpec> bases;
  bases.push_back(ClassSpec::named(NamedClass::SingletonOnly));
  bases.push_back(ClassSpec::from_seeds({chain(2)}));
  bases.push_back(ClassSpec::named(NamedClass::Linear, /*require_min=*/true));
  bases.push_back(ClassSpec::named(NamedClass::Antichain));
  for (const auto& base : bases) {
    auto one = sigma_one_step(base, p.bound);
    auto fix = sigma_fixpoint(base, p.bound);
    report.check(one == fix, [&] {
      Json cx;
      cx["base"] = base.describe();
      cx["one_step"] = one.size();
      cx["fixpoint"] = fix.size();
      return cx;
    });
    std::size_t up_bound = std::min<std::size_t>(p.bound, 5);
    auto uone = union_product_one_step(base, up_bound);
    auto ufix = union_product_fixpoint(base, up_bound);
    report.check(uone == ufix, [&] {
      Json cx;
      cx["base"] = base.describe();
      cx["one_step"] = uone.size();
      cx["fixpoint"] = ufix.size();
      return cx;
    });
  }
  return report;
}

SuiteReport suite_closure_identities(const SuiteParams& p) {
  SuiteReport report = make_report("closure-identities", p);
  // sums of singletons realize exactly the finite posets within the bound
  {
    std::size_t bound = std::min<std::size_t>(p.bound, 4);
    auto result = closure_sigma(ClassSpec::named(NamedClass::SingletonOnly), bound);
    std::set<CanonicalForm> everything;
    for (const auto& x : all_posets_upto(bound))
      everything.insert(canonical_form(x));
    report.check(result.members() == everything, [&] {
      Json cx;
      cx["got"] = result.members().size();
      cx["want"] = everything.size();
      return cx;
    });
  }
  // rooted sums add nothing to the class of all finite posets
  {
    std::size_t bound = std::min<std::size_t>(p.bound + 1, 5);
    auto result = closure_sigma_rooted(ClassSpec::named(NamedClass::AllFinite), bound);
    std::set<CanonicalForm> everything;
    for (const auto& x : all_posets_upto(bound))
      everything.insert(canonical_form(x));
    report.check(result.members() == everything && result.stabilized_at == 1, [&] {
      Json cx;
      cx["got"] = result.members().size();
      cx["want"] = everything.size();
      cx["stabilized_at"] = result.stabilized_at;
      return cx;
    });
  }
  // rooted sums of singletons stabilize immediately as well
  {
    std::size_t bound = std::min<std::size_t>(p.bound, 4);
    auto result =
        closure_sigma_rooted(ClassSpec::named(NamedClass::SingletonOnly), bound);
    std::set<CanonicalForm> everything;
    for (const auto& x : all_posets_upto(bound))
      everything.insert(canonical_form(x));
    report.check(result.members() == everything && result.stabilized_at == 1, [&] {
      Json cx;
      cx["got"] = result.members().size();
      cx["stabilized_at"] = result.stabilized_at;
      return cx;
    });
  }
  return report;
}

SuiteReport suite_class_chain(const SuiteParams& p) {
  SuiteReport report = make_report("class-chain", p);
  report.check(!is_reticle(n_poset()), [&] {
    Json cx;
    cx["poset"] = poset_to_json(n_poset());
    return cx;
  });
  for (const auto& x : all_posets_upto(p.bound)) {
    bool lin = is_linear(x) && x.has_min();
    bool tree = is_tree(x) && x.has_min();
    bool ret = is_reticle(x) && x.has_min();
    report.check(!lin || tree, [&] {
      Json cx;
      cx["poset"] = poset_to_json(x);
      cx["stage"] = "linear->tree";
      return cx;
    });
    report.check(!tree || ret, [&] {
      Json cx;
      cx["poset"] = poset_to_json(x);
      cx["stage"] = "tree->reticle";
      return cx;
    });
    // reversal carries min-roots to max-roots
    report.check(is_reticle(x) == is_reticle(reverse(x)), [&] {
      Json cx;
      cx["poset"] = poset_to_json(x);
      cx["stage"] = "reticle-reversal";
      return cx;
    });
  }
  return report;
}

SuiteReport suite_ef_chains(const SuiteParams& p) {
  SuiteReport report = make_report("ef-chains", p);
  const std::size_t maxn = std::max<std::size_t>(p.bound, 8);
  for (std::size_t k = 1; k <= p.k; ++k)
    for (std::size_t m = 1; m <= maxn; ++m)
      for (std::size_t n = 1; n <= maxn; ++n) {
        bool got = equiv_k(chain(m, "l"), chain(n, "r"), k);
        bool want = chains_equivalent_expected(m, n, k);
        report.check(got == want, [&] {
          Json cx;
          cx["m"] = m;
          cx["n"] = n;
          cx["k"] = k;
          cx["solver"] = got;
          cx["criterion"] = want;
          return cx;
        });
      }
  return report;
}

SuiteReport suite_ef_preservation(const SuiteParams& p) {
  SuiteReport report = make_report("ef-preservation", p);
  auto forms = all_posets_upto(p.bound);
  const auto& sentences = sentence_corpus();
  for (std::size_t a = 0; a < forms.size(); ++a)
    for (std::size_t b = a + 1; b < forms.size(); ++b)
      for (std::size_t k = 1; k <= p.k; ++k) {
        if (!equiv_k(forms[a], forms[b], k)) continue;
        for (const auto& psi : sentences) {
          if (!psi.free_variables().empty()) continue;
          if (psi.quantifier_rank() > k) continue;
          bool la = evaluate(forms[a], psi);
          bool lb = evaluate(forms[b], psi);
          report.check(la == lb, [&] {
            Json cx;
            cx["left"] = poset_to_json(forms[a]);
            cx["right"] = poset_to_json(forms[b]);
            cx["k"] = k;
            cx["sentence"] = psi.to_string();
            return cx;
          });
        }
      }
  return report;
}

SuiteReport suite_ef_pinned_collapse(const SuiteParams& p) {
  SuiteReport report = make_report("ef-pinned-collapse", p);
  const std::size_t cap = p.k + 1;
  for (const auto& y : all_posets_upto(p.bound)) {
    // induced substructures of y against y itself
    const std::size_t n = y.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) subset.push_back(i);
      FinitePoset x = y.induced(subset);
      bool all_win = true;
      for (std::size_t k = 0; k <= cap && all_win; ++k) {
        if (!ef_wins(x, {}, y, {}, k)) all_win = false;
        // pins of length 1 and 2 drawn from the substructure on both sides
        for (std::size_t i = 0; i < x.size() && all_win; ++i) {
          std::vector<std::string> pin{x.element(i)};
          if (!ef_wins(x, pin, y, pin, k)) all_win = false;
          for (std::size_t j = 0; j < x.size() && all_win; ++j) {
            std::vector<std::string> pins{x.element(i), x.element(j)};
            if (!ef_wins(x, pins, y, pins, k)) all_win = false;
          }
        }
      }
      bool iso = canonical_form(x) == canonical_form(y);
      report.check(!all_win || iso, [&] {
        Json cx;
        cx["substructure"] = poset_to_json(x);
        cx["whole"] = poset_to_json(y);
        return cx;
      });
    }
  }
  return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "relativization",    "w-invariance",       "block-definability",
      "transfer-self",     "transfer-sampled",   "sum-associativity",
      "sum-composition",   "pi-union",           "closure-onestep",
      "closure-identities", "class-chain",       "ef-chains",
      "ef-preservation",   "ef-pinned-collapse",
  };
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteParams& params) {
  if (name == "relativization") return suite_relativization(params);
  if (name == "w-invariance") return suite_w_invariance(params);
  if (name == "block-definability") return suite_block_definability(params);
  if (name == "transfer-self") return suite_transfer_self(params);
  if (name == "transfer-sampled") return suite_transfer_sampled(params);
  if (name == "sum-associativity") return suite_sum_associativity(params);
  if (name == "sum-composition") return suite_sum_composition(params);
  if (name == "pi-union") return suite_pi_union(params);
  if (name == "closure-onestep") return suite_closure_onestep(params);
  if (name == "closure-identities") return suite_closure_identities(params);
  if (name == "class-chain") return suite_class_chain(params);
  if (name == "ef-chains") return suite_ef_chains(params);
  if (name == "ef-preservation") return suite_ef_preservation(params);
  if (name == "ef-pinned-collapse") return suite_ef_pinned_collapse(params);
  throw parse_error("unknown suite \"" + name + "\"");
}

}  // namespace posetlab
