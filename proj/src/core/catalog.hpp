#pragma once

#include <vector>

#include "poset.hpp"

namespace posetlab {

inline constexpr std::size_t kCatalogBudget = 8;

/// All posets on `n` elements up to isomorphism, as canonical representatives
/// sorted by canonical code. Generated by extending smaller posets with a new
/// maximal element over each order ideal; cached per size.
const std::vector<FinitePoset>& all_posets(std::size_t n,
                                           std::size_t budget = kCatalogBudget);

/// Representatives of every size in 1..n.
std::vector<FinitePoset> all_posets_upto(std::size_t n,
                                         std::size_t budget = kCatalogBudget);

/// Order ideals (down-closed subsets, including the empty set) of x,
/// as index lists.
std::vector<std::vector<std::size_t>> order_ideals(const FinitePoset& x);

}  // namespace posetlab
