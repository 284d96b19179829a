#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "json_io.hpp"
#include "poset.hpp"

namespace posetlab {

inline constexpr std::size_t kClosureBudget = 7;

// Class predicates -----------------------------------------------------------

bool is_linear(const FinitePoset& x);
/// Every principal down-set is a chain.
bool is_tree(const FinitePoset& x);
bool is_reversed_tree(const FinitePoset& x);
/// No induced copy of the four-element poset with Hasse diagram N
/// (a < c, b < c, b < d); "embed" reads as order-embedding.
bool is_reticle(const FinitePoset& x);
/// Isomorphic to the powerset lattice of some finite set (size must be 2^m).
bool is_boolean_algebra(const FinitePoset& x,
                        std::size_t canon_budget = kCanonicalBudget);
bool is_antichain(const FinitePoset& x);

/// The N poset itself: {a,b,c,d} with a<c, b<c, b<d.
FinitePoset n_poset();
/// Subsets of an m-element set ordered by inclusion, named "s0".."s{2^m-1}"
/// by characteristic bitmask.
FinitePoset powerset_lattice(std::size_t m);

// Class specifications -------------------------------------------------------

enum class NamedClass {
  Linear,
  Tree,
  ReversedTree,
  Reticle,
  BooleanAlgebra,
  HasMin,
  HasMax,
  Antichain,
  AllFinite,
  SingletonOnly,
};

std::string to_string(NamedClass c);

/// A decidable class of finite posets: either a named predicate, optionally
/// intersected with has-min / has-max qualifiers, or an explicit seed set of
/// isomorphism types.
class ClassSpec {
 public:
  static ClassSpec named(NamedClass base, bool require_min = false,
                         bool require_max = false);
  static ClassSpec from_seeds(std::vector<FinitePoset> seeds);

  /// Expression syntax: a class name, "&"-intersected with "has-min" /
  /// "has-max" (e.g. "tree&has-min"), or "seeds:FILE" where FILE holds a
  /// json array of poset objects.
  static ClassSpec parse(const std::string& expression);

  bool contains(const FinitePoset& x) const;
  /// Members among all isomorphism types of the given size.
  std::vector<FinitePoset> representatives(std::size_t size) const;

  std::string describe() const;
  bool seeded() const { return seeded_; }

 private:
  ClassSpec() = default;
  bool seeded_ = false;
  NamedClass base_ = NamedClass::AllFinite;
  bool require_min_ = false;
  bool require_max_ = false;
  std::set<CanonicalForm> seed_forms_;
  std::vector<FinitePoset> seed_reps_;
};

// Closure operators -----------------------------------------------------------

enum class ClosureOp { Sigma, SigmaRooted, UnionProduct };

std::string to_string(ClosureOp op);
ClosureOp closure_op_from_string(const std::string& text);

/// Canonical forms reachable from a base class within a size bound, grouped
/// by the stage at which they first appear (stage 0 = base members).
struct ClosureResult {
  ClosureOp op = ClosureOp::Sigma;
  std::size_t bound = 0;
  std::vector<std::vector<CanonicalForm>> stages;
  /// Smallest n >= 1 whose next stage contributed nothing new.
  std::size_t stabilized_at = 1;

  std::set<CanonicalForm> members() const;
  Json to_json() const;
};

/// Closure under finite lexicographic sums. Computes the one-step set and the
/// fixpoint and requires them to agree (they do, one step suffices; a
/// disagreement would be an implementation fault).
ClosureResult closure_sigma(const ClassSpec& base, std::size_t bound,
                            std::size_t budget = kClosureBudget);

/// Closure under finite lexicographic sums of rooted summands, staged until
/// stabilization within the bound.
ClosureResult closure_sigma_rooted(const ClassSpec& base, std::size_t bound,
                                   std::size_t budget = kClosureBudget);

/// Closure under finite disjoint unions of finite direct products. One-step
/// normal form, cross-checked against the binary-operation fixpoint.
ClosureResult closure_union_product(const ClassSpec& base, std::size_t bound,
                                    std::size_t budget = kClosureBudget);

/// The individual routes, exposed so fact-checking suites can compare them.
std::set<CanonicalForm> sigma_one_step(const ClassSpec& base, std::size_t bound,
                                       std::size_t budget = kClosureBudget);
std::set<CanonicalForm> sigma_fixpoint(const ClassSpec& base, std::size_t bound,
                                       std::size_t budget = kClosureBudget);
std::set<CanonicalForm> union_product_one_step(const ClassSpec& base,
                                               std::size_t bound,
                                               std::size_t budget = kClosureBudget);
std::set<CanonicalForm> union_product_fixpoint(const ClassSpec& base,
                                               std::size_t bound,
                                               std::size_t budget = kClosureBudget);

// Membership with construction witnesses --------------------------------------

/// How a poset arises from base members under a closure operator.
struct ConstructionWitness {
  enum class Kind { Base, Sum, RootedSum, Union, Product };
  Kind kind = Kind::Base;
  CanonicalForm form;            // of the constructed value
  FinitePoset index;             // for Sum / RootedSum
  std::vector<ConstructionWitness> children;

  /// Rebuilds the construction; the result is isomorphic to the witnessed
  /// poset (for RootedSum the children are rooted before summing).
  FinitePoset rebuild() const;
  Json to_json() const;
};

struct MembershipResult {
  bool member = false;
  std::optional<ConstructionWitness> witness;
};

MembershipResult closure_membership(const FinitePoset& x, const ClassSpec& base,
                                    ClosureOp op,
                                    std::size_t budget = kClosureBudget);

}  // namespace posetlab
