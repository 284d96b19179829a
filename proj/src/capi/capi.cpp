#include "posetlab/posetlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "catalog.hpp"
#include "classes.hpp"
#include "ef.hpp"
#include "error.hpp"
#include "fld.hpp"
#include "formula.hpp"
#include "json_io.hpp"
#include "poset.hpp"
#include "verify.hpp"

using namespace posetlab;

struct pl_poset {
  FinitePoset value;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error, const std::string& message) {
  if (error) *error = dup_string(message);
}

pl_status status_of(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::Parse: return PL_ERR_PARSE;
    case Error::Kind::Semantic: return PL_ERR_SEMANTIC;
    case Error::Kind::Budget: return PL_ERR_BUDGET;
  }
  return PL_ERR_INTERNAL;
}

template <typename Fn>
pl_status guarded(char** error, Fn&& fn) {
  if (error) *error = nullptr;
  try {
    return fn();
  } catch (const Error& e) {
    set_error(error, e.what());
    return status_of(e);
  } catch (const std::exception& e) {
    set_error(error, e.what());
    return PL_ERR_INTERNAL;
  }
}

std::vector<std::string> split_csv(const char* csv) {
  std::vector<std::string> out;
  if (!csv) return out;
  std::string text(csv);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Assignment assignment_from_json(const char* json) {
  if (!json || !*json) return {};
  Json j;
  try {
    j = Json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid assignment json: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("assignment must be a json object");
  Assignment a;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw parse_error("assignment values must be strings");
    a[key] = value.get<std::string>();
  }
  return a;
}

Json witness_formulas_json(const WitnessFormulas& w) {
  Json f;
  Json blocks = Json::array();
  for (const auto& b : w.block) blocks.push_back(b.to_string());
  f["params"] = w.params;
  f["subject"] = w.subject;
  f["block"] = std::move(blocks);
  f["equivalence"] = w.equivalence.to_string();
  f["partition"] = w.partition.to_string();
  f["ordering"] = w.ordering.to_string();
  Json roots = Json::array();
  for (const auto& r : w.root) roots.push_back(r.to_string());
  f["root"] = std::move(roots);
  if (w.payload) f["payload"] = w.payload->to_string();
  f["combined"] = w.combined.to_string();
  return f;
}

}  // namespace

extern "C" {

const char* pl_version(void) { return "0.1.0"; }

void pl_string_free(char* s) { std::free(s); }

void pl_poset_free(pl_poset* p) { delete p; }

pl_status pl_poset_from_json(const char* json, pl_poset** out, char** error) {
  if (!json || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    *out = new pl_poset{poset_from_json_text(json)};
    return PL_OK;
  });
}

pl_status pl_poset_to_json(const pl_poset* p, char** out) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  *out = dup_string(poset_to_json(p->value).dump());
  return PL_OK;
}

size_t pl_poset_size(const pl_poset* p) { return p ? p->value.size() : 0; }

pl_status pl_poset_le(const pl_poset* p, const char* a, const char* b, int* out,
                      char** error) {
  if (!p || !a || !b || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    *out = p->value.le(std::string(a), std::string(b)) ? 1 : 0;
    return PL_OK;
  });
}

pl_status pl_poset_reverse(const pl_poset* p, pl_poset** out) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  *out = new pl_poset{reverse(p->value)};
  return PL_OK;
}

pl_status pl_poset_add_bottom(const pl_poset* p, pl_poset** out) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  *out = new pl_poset{add_bottom(p->value)};
  return PL_OK;
}

pl_status pl_poset_rooted(const pl_poset* p, pl_poset** out) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  *out = new pl_poset{rooted(p->value)};
  return PL_OK;
}

pl_status pl_lex_sum(const pl_poset* index, const pl_poset* const* summands,
                     size_t count, pl_poset** out, char** error) {
  if (!index || !summands || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    if (count != index->value.size())
      throw semantic_error("need one summand per index element");
    std::map<std::string, FinitePoset> parts;
    for (size_t i = 0; i < count; ++i) {
      if (!summands[i]) throw semantic_error("null summand");
      parts.emplace(index->value.element(i), summands[i]->value);
    }
    *out = new pl_poset{lex_sum(index->value, parts)};
    return PL_OK;
  });
}

pl_status pl_disjoint_union(const pl_poset* const* parts, size_t count,
                            pl_poset** out, char** error) {
  if (!parts || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    std::vector<FinitePoset> list;
    for (size_t i = 0; i < count; ++i) {
      if (!parts[i]) throw semantic_error("null part");
      list.push_back(parts[i]->value);
    }
    *out = new pl_poset{disjoint_union(list)};
    return PL_OK;
  });
}

pl_status pl_direct_product(const pl_poset* const* parts, size_t count,
                            pl_poset** out, char** error) {
  if (!parts || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    std::vector<FinitePoset> list;
    for (size_t i = 0; i < count; ++i) {
      if (!parts[i]) throw semantic_error("null part");
      list.push_back(parts[i]->value);
    }
    *out = new pl_poset{direct_product(list)};
    return PL_OK;
  });
}

pl_status pl_canonical_form(const pl_poset* p, size_t budget, char** out,
                            char** error) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    *out = dup_string(
        canonical_form(p->value, budget ? budget : kCanonicalBudget).to_string());
    return PL_OK;
  });
}

pl_status pl_automorphisms(const pl_poset* p, char** out, char** error) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    auto autos = automorphisms(p->value);
    Json j;
    j["count"] = autos.size();
    Json maps = Json::array();
    for (const auto& f : autos) {
      Json pairs = Json::array();
      for (const auto& [a, b] : f.pairs) pairs.push_back(Json::array({a, b}));
      maps.push_back(std::move(pairs));
    }
    j["maps"] = std::move(maps);
    *out = dup_string(j.dump());
    return PL_OK;
  });
}

pl_status pl_extrema(const pl_poset* p, char** out) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  Json j;
  j["maxima"] = p->value.maxima();
  j["minima"] = p->value.minima();
  j["has_max"] = p->value.has_max();
  j["has_min"] = p->value.has_min();
  *out = dup_string(j.dump());
  return PL_OK;
}

pl_status pl_formula_normalize(const char* formula, char** out, char** error) {
  if (!formula || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    *out = dup_string(parse_formula(formula).to_string());
    return PL_OK;
  });
}

pl_status pl_formula_rank(const char* formula, size_t* out, char** error) {
  if (!formula || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    *out = parse_formula(formula).quantifier_rank();
    return PL_OK;
  });
}

pl_status pl_formula_free_variables(const char* formula, char** out, char** error) {
  if (!formula || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    Json j = Json::array();
    for (const auto& v : parse_formula(formula).free_variables()) j.push_back(v);
    *out = dup_string(j.dump());
    return PL_OK;
  });
}

pl_status pl_eval(const pl_poset* p, const char* formula,
                  const char* assignment_json, int* out, char** error) {
  if (!p || !formula || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    Formula f = parse_formula(formula);
    Assignment a = assignment_from_json(assignment_json);
    *out = evaluate(p->value, f, a) ? 1 : 0;
    return PL_OK;
  });
}

pl_status pl_relativize(const char* formula, const char* guard,
                        const char* params_csv, const char* subject, char** out,
                        char** error) {
  if (!formula || !guard || !subject || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    Formula psi = parse_formula(formula);
    Formula g = parse_formula(guard);
    *out = dup_string(
        relativize(psi, g, split_csv(params_csv), subject).to_string());
    return PL_OK;
  });
}

pl_status pl_definable_set(const pl_poset* p, const char* guard,
                           const char* assignment_json, const char* subject,
                           char** out, char** error) {
  if (!p || !guard || !subject || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    Formula g = parse_formula(guard);
    Assignment a = assignment_from_json(assignment_json);
    DefinableSet d = definable_set(p->value, g, a, subject);
    Json j;
    j["members"] = d.members;
    j["empty"] = d.empty();
    *out = dup_string(j.dump());
    return PL_OK;
  });
}

pl_status pl_definable_spectrum(const pl_poset* p, const char* guard,
                                const char* params_csv, const char* subject,
                                char** out, char** error) {
  if (!p || !guard || !subject || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    Formula g = parse_formula(guard);
    auto spectrum =
        definable_spectrum(p->value, g, split_csv(params_csv), subject);
    Json j;
    Json forms = Json::array();
    for (const auto& f : spectrum.forms) forms.push_back(f.to_string());
    j["forms"] = std::move(forms);
    j["empty_tuples"] = spectrum.empty_tuples;
    j["total_tuples"] = spectrum.total_tuples;
    *out = dup_string(j.dump());
    return PL_OK;
  });
}

pl_status pl_decompositions(const pl_poset* p, const char* mode,
                            int emit_formulas, size_t budget, char** out,
                            char** error) {
  if (!p || !mode || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    DecompMode m = decomp_mode_from_string(mode);
    auto decomps = enumerate_decompositions(p->value, m,
                                            budget ? budget : kPartitionBudget);
    Json j;
    j["count"] = decomps.size();
    Json list = Json::array();
    for (const auto& d : decomps) {
      Json entry = d.to_json();
      if (emit_formulas)
        entry["formulas"] = witness_formulas_json(build_witness_formulas(d));
      list.push_back(std::move(entry));
    }
    j["decompositions"] = std::move(list);
    *out = dup_string(j.dump());
    return PL_OK;
  });
}

pl_status pl_transfer(const pl_poset* source, const char* mode,
                      const pl_poset* target, const char* sentences_json,
                      long decomposition, size_t tuple_budget, char** out,
                      char** error) {
  if (!source || !mode || !target || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    DecompMode m = decomp_mode_from_string(mode);
    std::vector<Formula> sentences;
    if (sentences_json && *sentences_json) {
      Json sj;
      try {
        sj = Json::parse(sentences_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid sentences json: ") + e.what());
      }
      if (!sj.is_array()) throw parse_error("sentences must be a json array");
      for (const auto& s : sj) sentences.push_back(parse_formula(s.get<std::string>()));
    }
    auto decomps = enumerate_decompositions(source->value, m);
    if (decomposition >= 0 &&
        static_cast<std::size_t>(decomposition) >= decomps.size())
      throw semantic_error("decomposition index out of range");
    Json results = Json::array();
    for (std::size_t i = 0; i < decomps.size(); ++i) {
      if (decomposition >= 0 && static_cast<std::size_t>(decomposition) != i)
        continue;
      Json entry;
      entry["decomposition"] = i;
      if (!sentences.empty() && sentences.size() != decomps[i].block_count()) {
        entry["status"] = "sentence-count-mismatch";
        results.push_back(std::move(entry));
        continue;
      }
      WitnessFormulas w = build_witness_formulas(decomps[i], sentences);
      auto moved = transfer_decomposition(
          target->value, w, tuple_budget ? tuple_budget : kTransferTupleBudget);
      if (moved) {
        entry["status"] = "transferred";
        entry["result"] = moved->to_json();
      } else {
        entry["status"] = "absent";
      }
      results.push_back(std::move(entry));
    }
    Json j;
    j["count"] = results.size();
    j["transfers"] = std::move(results);
    *out = dup_string(j.dump());
    return PL_OK;
  });
}

pl_status pl_ef_game(const pl_poset* left, const pl_poset* right, size_t k,
                     const char* left_pins_csv, const char* right_pins_csv,
                     char** out, char** error) {
  if (!left || !right || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    GameResult r = ef_game(left->value, split_csv(left_pins_csv), right->value,
                           split_csv(right_pins_csv), k);
    *out = dup_string(r.to_json().dump());
    return PL_OK;
  });
}

pl_status pl_ef_replay(const pl_poset* left, const pl_poset* right,
                       const char* left_pins_csv, const char* right_pins_csv,
                       const char* game_json, int* valid, char** error) {
  if (!left || !right || !game_json || !valid) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    Json j;
    try {
      j = Json::parse(game_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw parse_error(std::string("invalid game json: ") + e.what());
    }
    GameResult claimed = game_result_from_json(j);
    *valid = ef_replay(left->value, split_csv(left_pins_csv), right->value,
                       split_csv(right_pins_csv), claimed)
                 ? 1
                 : 0;
    return PL_OK;
  });
}

pl_status pl_distinguishing_rank(const pl_poset* left, const pl_poset* right,
                                 size_t cap, long* out, char** error) {
  if (!left || !right || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    auto rank = distinguishing_rank(left->value, right->value, cap);
    *out = rank ? static_cast<long>(*rank) : -1;
    return PL_OK;
  });
}

pl_status pl_classify(const pl_poset* p, char** out, char** error) {
  if (!p || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    Json j;
    j["linear"] = is_linear(p->value);
    j["tree"] = is_tree(p->value);
    j["reversed-tree"] = is_reversed_tree(p->value);
    j["reticle"] = is_reticle(p->value);
    j["boolean-algebra"] = is_boolean_algebra(p->value);
    j["antichain"] = is_antichain(p->value);
    j["has-min"] = p->value.has_min();
    j["has-max"] = p->value.has_max();
    *out = dup_string(j.dump());
    return PL_OK;
  });
}

pl_status pl_class_member(const pl_poset* p, const char* class_expr, int* out,
                          char** error) {
  if (!p || !class_expr || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    ClassSpec spec = ClassSpec::parse(class_expr);
    *out = spec.contains(p->value) ? 1 : 0;
    return PL_OK;
  });
}

pl_status pl_closure(const char* class_expr, const char* op, size_t bound,
                     char** out, char** error) {
  if (!class_expr || !op || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    ClassSpec spec = ClassSpec::parse(class_expr);
    ClosureOp o = closure_op_from_string(op);
    ClosureResult result;
    switch (o) {
      case ClosureOp::Sigma: result = closure_sigma(spec, bound); break;
      case ClosureOp::SigmaRooted: result = closure_sigma_rooted(spec, bound); break;
      case ClosureOp::UnionProduct:
        result = closure_union_product(spec, bound);
        break;
    }
    *out = dup_string(result.to_json().dump());
    return PL_OK;
  });
}

pl_status pl_closure_membership(const pl_poset* p, const char* class_expr,
                                const char* op, char** out, char** error) {
  if (!p || !class_expr || !op || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    ClassSpec spec = ClassSpec::parse(class_expr);
    ClosureOp o = closure_op_from_string(op);
    MembershipResult result = closure_membership(p->value, spec, o);
    Json j;
    j["member"] = result.member;
    if (result.witness) j["witness"] = result.witness->to_json();
    *out = dup_string(j.dump());
    return PL_OK;
  });
}

pl_status pl_suite_names(char** out) {
  if (!out) return PL_ERR_ARGUMENT;
  Json j = Json::array();
  for (const auto& n : suite_names()) j.push_back(n);
  *out = dup_string(j.dump());
  return PL_OK;
}

pl_status pl_verify(const char* suite, size_t bound, size_t k, uint64_t seed,
                    size_t samples, size_t work_cap, char** out, char** error) {
  if (!suite || !out) return PL_ERR_ARGUMENT;
  return guarded(error, [&] {
    SuiteParams params;
    if (bound) params.bound = bound;
    if (k) params.k = k;
    params.seed = seed;
    if (samples) params.samples = samples;
    if (work_cap) params.work_cap = work_cap;
    Json j;
    if (std::string(suite) == "all") {
      Json reports = Json::array();
      bool pass = true;
      for (const auto& name : suite_names()) {
        SuiteReport r = run_suite(name, params);
        pass = pass && r.pass;
        reports.push_back(r.to_json());
      }
      j["pass"] = pass;
      j["reports"] = std::move(reports);
    } else {
      SuiteReport r = run_suite(suite, params);
      j["pass"] = r.pass;
      j["reports"] = Json::array({r.to_json()});
    }
    *out = dup_string(j.dump());
    return PL_OK;
  });
}

}  // extern "C"
