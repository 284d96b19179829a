/* posetlab - a finite-model-theory workbench for partial orders.
 *
 * C interface over the C++ core: opaque poset handles, status codes, and
 * JSON strings for structured payloads. Every char** output is heap
 * allocated and must be released with pl_string_free; every pl_poset*
 * output with pl_poset_free. Formulas travel as strings in the grammar
 *
 *   formula := quant | impl
 *   quant   := ("forall"|"exists") IDENT "." formula
 *   impl    := or ("->" (quant|impl))?
 *   or      := and ("|" and)*        and := unary ("&" unary)*
 *   unary   := "!" unary | "(" formula ")" | IDENT ("<="|"=") IDENT
 *
 * Posets travel as {"elements":[...],"le":[[a,b],...]}; any input relation
 * whose reflexive-transitive closure is antisymmetric is accepted, and
 * writers emit the full closed relation with pairs sorted lexicographically.
 */

#ifndef POSETLAB_POSETLAB_H
#define POSETLAB_POSETLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pl_poset pl_poset;

typedef enum pl_status {
  PL_OK = 0,
  PL_ERR_PARSE = 2,    /* malformed json, formula or expression syntax */
  PL_ERR_SEMANTIC = 3, /* well-formed but meaningless (cycles, bad names) */
  PL_ERR_BUDGET = 4,   /* instance exceeds an enumeration budget */
  PL_ERR_ARGUMENT = 5, /* null or out-of-range argument */
  PL_ERR_INTERNAL = 6
} pl_status;

const char* pl_version(void);
void pl_string_free(char* s);
void pl_poset_free(pl_poset* p);

/* ------------------------------------------------------------------ posets */

pl_status pl_poset_from_json(const char* json, pl_poset** out, char** error);
pl_status pl_poset_to_json(const pl_poset* p, char** out);
size_t pl_poset_size(const pl_poset* p);
pl_status pl_poset_le(const pl_poset* p, const char* a, const char* b,
                      int* out, char** error);

pl_status pl_poset_reverse(const pl_poset* p, pl_poset** out);
pl_status pl_poset_add_bottom(const pl_poset* p, pl_poset** out);
pl_status pl_poset_rooted(const pl_poset* p, pl_poset** out);
/* summands[i] is attached to index element i, in index element order */
pl_status pl_lex_sum(const pl_poset* index, const pl_poset* const* summands,
                     size_t count, pl_poset** out, char** error);
pl_status pl_disjoint_union(const pl_poset* const* parts, size_t count,
                            pl_poset** out, char** error);
pl_status pl_direct_product(const pl_poset* const* parts, size_t count,
                            pl_poset** out, char** error);

/* "<size>:<bits>" canonical code; equal exactly for isomorphic posets.
 * budget 0 picks the default (10 elements). */
pl_status pl_canonical_form(const pl_poset* p, size_t budget, char** out,
                            char** error);
/* json: {"count":n,"maps":[[[a,b],...],...]} */
pl_status pl_automorphisms(const pl_poset* p, char** out, char** error);
/* json: {"maxima":[...],"minima":[...],"has_max":b,"has_min":b} */
pl_status pl_extrema(const pl_poset* p, char** out);

/* --------------------------------------------------------------- formulas */

/* parses and reprints (round-trip normal form, implication desugared) */
pl_status pl_formula_normalize(const char* formula, char** out, char** error);
pl_status pl_formula_rank(const char* formula, size_t* out, char** error);
/* json array of the free variables, sorted */
pl_status pl_formula_free_variables(const char* formula, char** out, char** error);

/* assignment_json: {"variable":"element",...}; truth lands in *out */
pl_status pl_eval(const pl_poset* p, const char* formula,
                  const char* assignment_json, int* out, char** error);

/* params_csv: comma separated parameter variables, may be empty */
pl_status pl_relativize(const char* formula, const char* guard,
                        const char* params_csv, const char* subject,
                        char** out, char** error);

/* json: {"members":[...],"empty":bool} */
pl_status pl_definable_set(const pl_poset* p, const char* guard,
                           const char* assignment_json, const char* subject,
                           char** out, char** error);
/* json: {"forms":[...],"empty_tuples":n,"total_tuples":n} */
pl_status pl_definable_spectrum(const pl_poset* p, const char* guard,
                                const char* params_csv, const char* subject,
                                char** out, char** error);

/* ---------------------------------------------------------- decompositions */

/* mode: "fld1" | "fld0". json: {"count":n,"decompositions":[...]} where each
 * entry is {"index":...,"blocks":...,"roots":...,"mode":...} plus, when
 * emit_formulas is nonzero, a "formulas" object in the grammar syntax.
 * budget caps the domain size for partition enumeration (0: default 10). */
pl_status pl_decompositions(const pl_poset* p, const char* mode,
                            int emit_formulas, size_t budget, char** out,
                            char** error);

/* Runs the formula transfer of the source's decompositions onto the target.
 * sentences_json: null, or a json array of closed formula strings, one per
 * block of the selected decomposition. decomposition: index into the
 * enumeration order, or -1 for all. tuple_budget caps the root-tuple search
 * (0: default 4000000). */
pl_status pl_transfer(const pl_poset* source, const char* mode,
                      const pl_poset* target, const char* sentences_json,
                      long decomposition, size_t tuple_budget, char** out,
                      char** error);

/* ------------------------------------------------------------------ games */

/* pins_csv: comma separated element names, may be null or empty.
 * json: {"winner":"II"|"I","k":n,"trace":[...]} */
pl_status pl_ef_game(const pl_poset* left, const pl_poset* right, size_t k,
                     const char* left_pins_csv, const char* right_pins_csv,
                     char** out, char** error);
pl_status pl_ef_replay(const pl_poset* left, const pl_poset* right,
                       const char* left_pins_csv, const char* right_pins_csv,
                       const char* game_json, int* valid, char** error);
/* least distinguishing round count <= cap, or -1 when none found */
pl_status pl_distinguishing_rank(const pl_poset* left, const pl_poset* right,
                                 size_t cap, long* out, char** error);

/* -------------------------------------------------------- classes, closures */

/* json of named predicate verdicts for this poset */
pl_status pl_classify(const pl_poset* p, char** out, char** error);
/* class_expr: name, name&has-min/&has-max, or seeds:FILE */
pl_status pl_class_member(const pl_poset* p, const char* class_expr, int* out,
                          char** error);

/* op: "sigma" | "sigma-rooted" | "union-product".
 * json: {"operator":...,"bound":n,"stages":[[codes...]...],"stabilized_at":n} */
pl_status pl_closure(const char* class_expr, const char* op, size_t bound,
                     char** out, char** error);
/* json: {"member":bool,"witness":...} with a construction tree on success */
pl_status pl_closure_membership(const pl_poset* p, const char* class_expr,
                                const char* op, char** out, char** error);

/* ---------------------------------------------------------------- suites */

/* Known suites, json array of names. */
pl_status pl_suite_names(char** out);
/* Runs one fact-checking suite ("all" chains every suite); the report json
 * carries pass/fail and counterexamples. samples/work_cap 0 pick defaults. */
pl_status pl_verify(const char* suite, size_t bound, size_t k, uint64_t seed,
                    size_t samples, size_t work_cap, char** out, char** error);

#ifdef __cplusplus
}
#endif

#endif /* POSETLAB_POSETLAB_H */
