#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace posetlab {

inline constexpr std::size_t kCanonicalBudget = 10;

/// A finite partial order on named elements. The relation is stored as the
/// full reflexive-transitive matrix; construction from an arbitrary relation
/// closes it and rejects cycles (antisymmetry failure) instead of quotienting.
class FinitePoset {
 public:
  /// Builds a poset from an arbitrary binary relation. Takes the
  /// reflexive-transitive closure, then rejects if antisymmetry fails.
  static FinitePoset from_relation(
      std::vector<std::string> elements,
      const std::vector<std::pair<std::string, std::string>>& le_pairs);

  /// Trusted constructor: `matrix` must already be a partial order
  /// (row-major n*n, matrix[i*n+j] != 0 iff element i <= element j).
  FinitePoset(std::vector<std::string> elements, std::vector<uint8_t> matrix);

  /// Empty placeholder, only useful as a slot to assign into.
  FinitePoset() = default;

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::string& element(std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t require_index(const std::string& name) const;

  bool le(std::size_t i, std::size_t j) const { return matrix_[i * size() + j] != 0; }
  bool le(const std::string& a, const std::string& b) const {
    return le(require_index(a), require_index(b));
  }
  bool lt(std::size_t i, std::size_t j) const { return i != j && le(i, j); }
  bool incomparable(std::size_t i, std::size_t j) const {
    return !le(i, j) && !le(j, i);
  }

  /// Full reflexive-transitive relation as name pairs, sorted lexicographically.
  std::vector<std::pair<std::string, std::string>> relation_pairs() const;

  /// Induced subposet on the given element indices (kept in the given order).
  FinitePoset induced(const std::vector<std::size_t>& subset) const;
  FinitePoset induced_by_names(const std::vector<std::string>& names) const;

  FinitePoset renamed(
      const std::function<std::string(const std::string&)>& rename) const;

  std::vector<std::size_t> maximal_indices() const;
  std::vector<std::size_t> minimal_indices() const;
  std::vector<std::string> maxima() const;
  std::vector<std::string> minima() const;

  /// Index of the unique greatest / least element, if one exists.
  std::optional<std::size_t> greatest() const;
  std::optional<std::size_t> least() const;
  bool has_max() const { return greatest().has_value(); }
  bool has_min() const { return least().has_value(); }

  /// Same element set and same relation (element order ignored).
  bool same_order(const FinitePoset& other) const;

 private:
  std::vector<std::string> elements_;
  std::vector<uint8_t> matrix_;  // row-major le matrix
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Construction algebra

/// Lexicographic sum: one summand per index element; summand elements are
/// namespaced as "<index element>.<name>" to make domains disjoint.
FinitePoset lex_sum(const FinitePoset& index,
                    const std::map<std::string, FinitePoset>& summands);

/// Same sum with summands aligned to index element order; the hot path for
/// enumeration loops.
FinitePoset lex_sum(const FinitePoset& index,
                    const std::vector<const FinitePoset*>& summands);

/// Same summand at every index position.
FinitePoset lex_sum_uniform(const FinitePoset& index, const FinitePoset& summand);

FinitePoset disjoint_union(const std::vector<FinitePoset>& parts);

/// Cartesian product with componentwise order; element names are "(a,b,...)".
FinitePoset direct_product(const std::vector<FinitePoset>& parts);

FinitePoset reverse(const FinitePoset& x);

/// 1 + X: a fresh element below everything.
FinitePoset add_bottom(const FinitePoset& x);

/// X itself when min X exists, otherwise 1 + X. Always has a minimum.
FinitePoset rooted(const FinitePoset& x);

FinitePoset chain(std::size_t n, const std::string& prefix = "c");
FinitePoset antichain(std::size_t n, const std::string& prefix = "a");
FinitePoset singleton(const std::string& name = "e");

// ---------------------------------------------------------------------------
// Isomorphism

/// Stand-in for the isomorphism type: `code` is the lexicographically minimal
/// bit-string encoding of the order matrix over all element permutations.
/// Cell layout is placement order: placing position k appends le(k, 0..k)
/// then le(0..k-1, k), so a permutation prefix determines a code prefix.
struct CanonicalForm {
  std::uint32_t size = 0;
  std::string code;

  auto operator<=>(const CanonicalForm&) const = default;

  /// Rendered as "<size>:<bits>", the wire format used in closure reports.
  std::string to_string() const;
  static CanonicalForm from_string(const std::string& text);

  /// Rebuilds a representative poset (elements "a", "b", ...) from the code.
  FinitePoset representative() const;
};

/// Minimal-matrix search over permutations with rank-vector seeding and
/// row-by-row pruning. Exact; budget-capped (throws Budget beyond `budget`).
CanonicalForm canonical_form(const FinitePoset& x,
                             std::size_t budget = kCanonicalBudget);

/// A finite map between element names, injective in both coordinates when
/// well-formed. Also used for total bijections (automorphisms).
struct PartialMap {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool functional_and_injective() const;
  bool is_partial_isomorphism(const FinitePoset& from, const FinitePoset& to) const;
  std::optional<std::string> image_of(const std::string& source) const;
};

/// All order-preserving self-bijections, in lexicographic image order.
std::vector<PartialMap> automorphisms(const FinitePoset& x,
                                      std::size_t budget = kCanonicalBudget);

}  // namespace posetlab
