#pragma once

#include <optional>
#include <string>
#include <vector>

#include "formula.hpp"
#include "json_io.hpp"
#include "poset.hpp"

namespace posetlab {

/// Which end of each block must carry a root: Fld1 wants a greatest element
/// per block, Fld0 a least element.
enum class DecompMode { Fld0, Fld1 };

std::string to_string(DecompMode mode);
DecompMode decomp_mode_from_string(const std::string& text);

inline constexpr std::size_t kPartitionBudget = 10;
inline constexpr std::size_t kTransferTupleBudget = 4000000;

/// A lexicographic decomposition of `parent`: blocks partition the domain,
/// are pairwise order-autonomous, and block i holds root `roots[i]` (its max
/// in Fld1 mode, its min in Fld0 mode). Index elements are "0".."n-1" and
/// blocks[i] belongs to index element i.
struct Decomposition {
  FinitePoset parent;
  FinitePoset index;
  std::vector<std::vector<std::string>> blocks;  // element names, sorted
  std::vector<std::string> roots;
  DecompMode mode = DecompMode::Fld1;

  std::size_t block_count() const { return blocks.size(); }
  Json to_json() const;
};

/// All partitions of the domain into pairwise order-autonomous blocks
/// (any block count, including the trivial one-block partition),
/// as index lists per block. Throws Budget above `budget` elements.
std::vector<std::vector<std::vector<std::size_t>>> autonomous_partitions(
    const FinitePoset& x, std::size_t budget = kPartitionBudget);

/// All decompositions in the given mode, deduplicated by block partition,
/// sorted by block count then lexicographically by block contents. Blocks are
/// numbered in order of their least element name.
std::vector<Decomposition> enumerate_decompositions(
    const FinitePoset& x, DecompMode mode, std::size_t budget = kPartitionBudget);

/// The defining formulas of a decomposition with parameter variables
/// w0..w{n-1}: per-block membership, the block equivalence, the partition
/// sentence, the inter-block ordering sentence, per-block root sentences, and
/// optionally the relativized per-block sentence payloads.
struct WitnessFormulas {
  std::vector<std::string> params;  // "w0".."w{n-1}"
  std::string subject = "v";
  std::string subject2 = "u";
  std::vector<Formula> block;
  Formula equivalence = Formula::tautology();
  Formula partition = Formula::tautology();
  Formula ordering = Formula::tautology();
  std::vector<Formula> root;
  std::vector<Formula> sentences;        // the payloads as given (closed)
  std::optional<Formula> payload;        // their relativizations, conjoined
  Formula combined = Formula::tautology();
  FinitePoset index;
  DecompMode mode = DecompMode::Fld1;

  Assignment params_for(const std::vector<std::string>& roots) const;
};

/// Builds the witness formulas; `sentences`, when given, must be closed and
/// one per index element.
WitnessFormulas build_witness_formulas(
    const Decomposition& d,
    const std::vector<Formula>& sentences = {});

/// Block-definability report: every block must equal the set its formula
/// defines with the roots as parameters.
struct BlockDefinabilityReport {
  struct Violation {
    std::size_t block_index;
    std::vector<std::string> expected;
    std::vector<std::string> actual;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

BlockDefinabilityReport verify_block_definability(const Decomposition& d);

/// Classes of the block equivalence formula evaluated on `x` with the given
/// roots; each class sorted, classes sorted by least member.
std::vector<std::vector<std::string>> equivalence_classes(
    const FinitePoset& x, const WitnessFormulas& w,
    const std::vector<std::string>& roots);

/// Searches all parameter tuples over y for one satisfying the combined
/// witness formula; on success rebuilds the blocks from the block formulas,
/// fully re-verifies them (partition, autonomy against the index, roots,
/// payload sentences on the induced blocks), and returns the decomposition.
std::optional<Decomposition> transfer_decomposition(
    const FinitePoset& y, const WitnessFormulas& w,
    std::size_t tuple_budget = kTransferTupleBudget);

/// Re-derives every Decomposition invariant from scratch: partition,
/// pairwise autonomy by comparability scans, root elements, and isomorphism
/// between the parent and the lexicographic sum of the induced blocks.
bool validate_decomposition(const Decomposition& d, std::string* why = nullptr);

/// The wire format carries index/blocks/roots/mode; the parent poset travels
/// separately.
Decomposition decomposition_from_json(const Json& j, FinitePoset parent);

}  // namespace posetlab
