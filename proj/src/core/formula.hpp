#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "poset.hpp"

namespace posetlab {

/// First-order formulas over one binary relation symbol. Exactly six
/// constructors survive parsing; "->" is surface sugar for "!a | b".
class Formula {
 public:
  enum class Kind { Eq, Le, Not, And, Or, Forall, Exists };

  static Formula eq(std::string a, std::string b);
  static Formula le(std::string a, std::string b);
  static Formula lnot(Formula f);
  static Formula land(Formula a, Formula b);
  static Formula lor(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  /// Right-folded conjunction / disjunction; empty input is rejected
  /// (callers that need "true" use tautology()).
  static Formula conj(const std::vector<Formula>& fs);
  static Formula disj(const std::vector<Formula>& fs);

  /// A closed tautology, used where a construction degenerates to an empty
  /// conjunction: "forall t0 . t0 = t0".
  static Formula tautology();

  Kind kind() const { return node_->kind; }
  /// Atom operands (Eq/Le) or the bound variable (Forall/Exists).
  const std::string& var1() const { return node_->a; }
  const std::string& var2() const { return node_->b; }
  const Formula& child(std::size_t i = 0) const { return node_->kids[i]; }
  std::size_t arity() const { return node_->kids.size(); }

  bool operator==(const Formula& other) const;

  std::set<std::string> free_variables() const;
  std::set<std::string> bound_variables() const;
  /// Max quantifier nesting depth.
  std::size_t quantifier_rank() const;

  /// Concrete syntax accepted back by parse_formula (round-trip exact).
  std::string to_string() const;

  /// Variable-for-variable substitution on free occurrences,
  /// capture-avoiding (colliding binders are renamed).
  Formula substitute(const std::string& var, const std::string& replacement) const;

  /// Renames bound variables clashing with `avoid` to fresh names.
  Formula rename_bound_away_from(const std::set<std::string>& avoid) const;

 private:
  struct Node {
    Kind kind;
    std::string a, b;
    std::vector<Formula> kids;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind k, std::string a, std::string b, std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

/// Parses the formula grammar:
///   formula := quant | impl
///   quant   := ("forall"|"exists") IDENT "." formula
///   impl    := or ("->" (quant|impl))?
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "!" unary | "(" formula ")" | atom
///   atom    := IDENT ("<="|"=") IDENT
/// Unbound variables are not an error; open formulas are first-class.
Formula parse_formula(const std::string& text);

/// Variable assignment; values must name elements of the poset in use.
using Assignment = std::map<std::string, std::string>;

/// Tarskian satisfaction over the finite domain. Throws Semantic when a free
/// variable of `f` is unassigned or assigned outside the domain.
bool evaluate(const FinitePoset& x, const Formula& f, const Assignment& a = {});

/// Evaluation against a prebuilt (variable, element index) environment;
/// the hot path for tuple searches. Later entries shadow earlier ones.
using EvalEnv = std::vector<std::pair<std::string, std::size_t>>;
bool evaluate_env(const FinitePoset& x, const Formula& f, EvalEnv& env);

/// Quantifier relativization: atoms untouched, connectives homomorphic,
/// "forall u . b" becomes "forall u . (guard(u) -> b')" and
/// "exists u . b" becomes "exists u . (guard(u) & b')", with the implication
/// in desugared form. `guard` has free variables within params + {subject};
/// bound variables of `psi` clashing with params are renamed first.
Formula relativize(const Formula& psi, const Formula& guard,
                   const std::vector<std::string>& params,
                   const std::string& subject);

/// The set defined by guard(params := values, subject) inside `parent`.
struct DefinableSet {
  const FinitePoset* parent = nullptr;
  Formula guard = Formula::tautology();
  std::string subject;
  Assignment params;
  std::vector<std::size_t> member_indices;  // ascending
  std::vector<std::string> members;         // parent order

  bool empty() const { return members.empty(); }
  /// Induced substructure; only valid when nonempty.
  FinitePoset induced() const;
};

DefinableSet definable_set(const FinitePoset& x, const Formula& guard,
                           const Assignment& params, const std::string& subject);

/// Isomorphism types of the substructures on definable sets over all
/// parameter tuples; empty sets are skipped and counted separately.
struct DefinableSpectrum {
  std::set<CanonicalForm> forms;
  std::size_t empty_tuples = 0;
  std::size_t total_tuples = 0;
};

DefinableSpectrum definable_spectrum(const FinitePoset& x, const Formula& guard,
                                     const std::vector<std::string>& params,
                                     const std::string& subject,
                                     std::size_t canon_budget = kCanonicalBudget);

}  // namespace posetlab
