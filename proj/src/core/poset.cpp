#include "poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace posetlab {

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

FinitePoset FinitePoset::from_relation(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& le_pairs) {
  if (elements.empty()) throw semantic_error("poset must have a nonempty domain");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!index.emplace(elements[i], i).second)
      throw semantic_error("duplicate element " + quoted(elements[i]));
  }
  const std::size_t n = elements.size();
  std::vector<uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  for (const auto& [a, b] : le_pairs) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end())
      throw semantic_error("relation mentions unknown element " + quoted(a));
    if (ib == index.end())
      throw semantic_error("relation mentions unknown element " + quoted(b));
    m[ia->second * n + ib->second] = 1;
  }
  // transitive closure
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (m[k * n + j]) m[i * n + j] = 1;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m[i * n + j] && m[j * n + i])
        throw semantic_error("antisymmetry violation: cycle through " +
                             quoted(elements[i]) + " and " + quoted(elements[j]));
  return FinitePoset(std::move(elements), std::move(m));
}

FinitePoset::FinitePoset(std::vector<std::string> elements,
                         std::vector<uint8_t> matrix)
    : elements_(std::move(elements)), matrix_(std::move(matrix)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::optional<std::size_t> FinitePoset::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinitePoset::require_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw semantic_error("unknown element " + quoted(name));
  return it->second;
}

std::vector<std::pair<std::string, std::string>> FinitePoset::relation_pairs()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (le(i, j)) out.emplace_back(elements_[i], elements_[j]);
  std::sort(out.begin(), out.end());
  return out;
}

FinitePoset FinitePoset::induced(const std::vector<std::size_t>& subset) const {
  if (subset.empty()) throw semantic_error("induced subposet needs a nonempty carrier");
  std::vector<std::string> names;
  names.reserve(subset.size());
  for (std::size_t i : subset) names.push_back(elements_.at(i));
  const std::size_t k = subset.size();
  std::vector<uint8_t> m(k * k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      m[a * k + b] = le(subset[a], subset[b]) ? 1 : 0;
  return FinitePoset(std::move(names), std::move(m));
}

FinitePoset FinitePoset::induced_by_names(
    const std::vector<std::string>& names) const {
  std::vector<std::size_t> subset;
  subset.reserve(names.size());
  for (const auto& n : names) subset.push_back(require_index(n));
  return induced(subset);
}

FinitePoset FinitePoset::renamed(
    const std::function<std::string(const std::string&)>& rename) const {
  std::vector<std::string> names;
  names.reserve(size());
  for (const auto& e : elements_) names.push_back(rename(e));
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size())
    throw semantic_error("renaming collides");
  return FinitePoset(std::move(names), matrix_);
}

std::vector<std::size_t> FinitePoset::maximal_indices() const {
  std::vector<std::size_t> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < n && maximal; ++j)
      if (j != i && le(i, j)) maximal = false;
    if (maximal) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FinitePoset::minimal_indices() const {
  std::vector<std::size_t> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < n && minimal; ++j)
      if (j != i && le(j, i)) minimal = false;
    if (minimal) out.push_back(i);
  }
  return out;
}

std::vector<std::string> FinitePoset::maxima() const {
  std::vector<std::string> out;
  for (std::size_t i : maximal_indices()) out.push_back(elements_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> FinitePoset::minima() const {
  std::vector<std::string> out;
  for (std::size_t i : minimal_indices()) out.push_back(elements_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> FinitePoset::greatest() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    bool top = true;
    for (std::size_t j = 0; j < n && top; ++j)
      if (!le(j, i)) top = false;
    if (top) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> FinitePoset::least() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    bool bottom = true;
    for (std::size_t j = 0; j < n && bottom; ++j)
      if (!le(i, j)) bottom = false;
    if (bottom) return i;
  }
  return std::nullopt;
}

bool FinitePoset::same_order(const FinitePoset& other) const {
  if (size() != other.size()) return false;
  if (elements_ == other.elements_) return matrix_ == other.matrix_;
  for (const auto& e : elements_)
    if (!other.index_of(e)) return false;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) {
      bool here = le(i, j);
      bool there = other.le(elements_[i], elements_[j]);
      if (here != there) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

FinitePoset lex_sum(const FinitePoset& index,
                    const std::map<std::string, FinitePoset>& summands) {
  const std::size_t ni = index.size();
  std::vector<const FinitePoset*> parts(ni, nullptr);
  for (std::size_t i = 0; i < ni; ++i) {
    auto it = summands.find(index.element(i));
    if (it == summands.end())
      throw semantic_error("missing summand for index element \"" +
                           index.element(i) + "\"");
    parts[i] = &it->second;
  }
  return lex_sum(index, parts);
}

FinitePoset lex_sum(const FinitePoset& index,
                    const std::vector<const FinitePoset*>& parts) {
  const std::size_t ni = index.size();
  if (parts.size() != ni) throw semantic_error("need one summand per index element");
  std::vector<std::string> names;
  std::vector<std::size_t> offset(ni, 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < ni; ++i) {
    offset[i] = total;
    total += parts[i]->size();
    for (const auto& e : parts[i]->elements())
      names.push_back(index.element(i) + "." + e);
  }
  std::vector<uint8_t> m(total * total, 0);
  for (std::size_t i = 0; i < ni; ++i) {
    const FinitePoset& xi = *parts[i];
    for (std::size_t a = 0; a < xi.size(); ++a)
      for (std::size_t b = 0; b < xi.size(); ++b)
        if (xi.le(a, b)) m[(offset[i] + a) * total + (offset[i] + b)] = 1;
    for (std::size_t j = 0; j < ni; ++j) {
      if (i == j || !index.le(i, j)) continue;
      for (std::size_t a = 0; a < xi.size(); ++a)
        for (std::size_t b = 0; b < parts[j]->size(); ++b)
          m[(offset[i] + a) * total + (offset[j] + b)] = 1;
    }
  }
  return FinitePoset(std::move(names), std::move(m));
}

FinitePoset lex_sum_uniform(const FinitePoset& index, const FinitePoset& summand) {
  std::map<std::string, FinitePoset> summands;
  for (const auto& e : index.elements()) summands.emplace(e, summand);
  return lex_sum(index, summands);
}

FinitePoset disjoint_union(const std::vector<FinitePoset>& parts) {
  if (parts.empty()) throw semantic_error("disjoint union of an empty list");
  std::map<std::string, FinitePoset> summands;
  for (std::size_t i = 0; i < parts.size(); ++i)
    summands.emplace(std::to_string(i), parts[i]);
  return lex_sum(antichain(parts.size(), ""), summands);
}

FinitePoset direct_product(const std::vector<FinitePoset>& parts) {
  if (parts.empty()) throw semantic_error("direct product of an empty list");
  std::size_t total = 1;
  for (const auto& p : parts) total *= p.size();
  // tuples in row-major order: last coordinate varies fastest
  std::vector<std::vector<std::size_t>> tuples;
  tuples.reserve(total);
  std::vector<std::size_t> cur(parts.size(), 0);
  for (std::size_t t = 0; t < total; ++t) {
    tuples.push_back(cur);
    for (std::size_t k = parts.size(); k-- > 0;) {
      if (++cur[k] < parts[k].size()) break;
      cur[k] = 0;
    }
  }
  std::vector<std::string> names;
  names.reserve(total);
  for (const auto& tup : tuples) {
    std::string name = "(";
    for (std::size_t k = 0; k < tup.size(); ++k) {
      if (k) name += ",";
      name += parts[k].element(tup[k]);
    }
    name += ")";
    names.push_back(std::move(name));
  }
  std::vector<uint8_t> m(total * total, 0);
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      bool below = true;
      for (std::size_t k = 0; k < parts.size() && below; ++k)
        if (!parts[k].le(tuples[a][k], tuples[b][k])) below = false;
      if (below) m[a * total + b] = 1;
    }
  return FinitePoset(std::move(names), std::move(m));
}

FinitePoset reverse(const FinitePoset& x) {
  const std::size_t n = x.size();
  std::vector<uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (x.le(j, i)) m[i * n + j] = 1;
  return FinitePoset(x.elements(), std::move(m));
}

FinitePoset add_bottom(const FinitePoset& x) {
  std::string fresh = "root";
  while (x.index_of(fresh)) fresh += "_";
  std::vector<std::string> names;
  names.push_back(fresh);
  for (const auto& e : x.elements()) names.push_back(e);
  const std::size_t n = x.size() + 1;
  std::vector<uint8_t> m(n * n, 0);
  for (std::size_t j = 0; j < n; ++j) m[0 * n + j] = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x.le(i, j)) m[(i + 1) * n + (j + 1)] = 1;
  return FinitePoset(std::move(names), std::move(m));
}

FinitePoset rooted(const FinitePoset& x) {
  return x.has_min() ? x : add_bottom(x);
}

FinitePoset chain(std::size_t n, const std::string& prefix) {
  if (n == 0) throw semantic_error("chain of size 0");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  std::vector<uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m[i * n + j] = 1;
  return FinitePoset(std::move(names), std::move(m));
}

FinitePoset antichain(std::size_t n, const std::string& prefix) {
  if (n == 0) throw semantic_error("antichain of size 0");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  std::vector<uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return FinitePoset(std::move(names), std::move(m));
}

FinitePoset singleton(const std::string& name) {
  return FinitePoset({name}, {1});
}

// ---------------------------------------------------------------------------
// Canonical form

std::string CanonicalForm::to_string() const {
  return std::to_string(size) + ":" + code;
}

CanonicalForm CanonicalForm::from_string(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw parse_error("bad canonical code: " + text);
  CanonicalForm f;
  f.size = static_cast<std::uint32_t>(std::stoul(text.substr(0, colon)));
  f.code = text.substr(colon + 1);
  if (f.code.size() != static_cast<std::size_t>(f.size) * f.size)
    throw parse_error("canonical code length mismatch: " + text);
  return f;
}

FinitePoset CanonicalForm::representative() const {
  const std::size_t n = size;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    std::string name(1, static_cast<char>('a' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    names.push_back(name);
  }
  // inverse of the placement-order layout used by canonical_form; routed
  // through from_relation so foreign codes cannot smuggle in a non-poset
  std::vector<uint8_t> m(n * n, 0);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j <= k; ++j)
      m[k * n + j] = code[pos++] == '1' ? 1 : 0;
    for (std::size_t j = 0; j < k; ++j)
      m[j * n + k] = code[pos++] == '1' ? 1 : 0;
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i * n + j]) pairs.emplace_back(names[i], names[j]);
  FinitePoset built = FinitePoset::from_relation(names, pairs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (built.le(i, j) != (m[i * n + j] != 0))
        throw parse_error("canonical code is not transitively closed");
  return built;
}

namespace {

// Minimal-code search. The code lists matrix cells in placement order: when
// the element at position k is placed, it contributes the segment
//   le(k,0..k)  followed by  le(0..k-1, k)
// so the first d^2 bits are fully determined by the first d placements and
// prefix pruning against the best code is exact.
struct CanonSearch {
  const FinitePoset& x;
  std::size_t n;
  std::vector<std::size_t> perm;  // perm[pos] = element placed at pos
  std::vector<bool> used;
  std::string best;
  std::string current;

  explicit CanonSearch(const FinitePoset& p)
      : x(p), n(p.size()), perm(p.size()), used(p.size(), false) {}

  void run() {
    // Seed with a rank-sorted permutation (strict down-set / up-set sizes)
    // so pruning has a tight bound from the start.
    std::vector<std::size_t> seed(n);
    std::iota(seed.begin(), seed.end(), 0);
    auto rank = [&](std::size_t e) {
      std::size_t below = 0, above = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == e) continue;
        if (x.le(j, e)) ++below;
        if (x.le(e, j)) ++above;
      }
      return std::pair<std::size_t, std::size_t>(below, above);
    };
    std::stable_sort(seed.begin(), seed.end(), [&](std::size_t a, std::size_t b) {
      return rank(a) < rank(b);
    });
    best = encode(seed);
    current.reserve(n * n);
    descend(0);
  }

  std::string segment(std::size_t pos, std::size_t e) const {
    std::string seg;
    seg.reserve(2 * pos + 1);
    for (std::size_t j = 0; j <= pos; ++j) {
      std::size_t other = (j == pos) ? e : perm[j];
      seg.push_back(x.le(e, other) ? '1' : '0');
    }
    for (std::size_t j = 0; j < pos; ++j)
      seg.push_back(x.le(perm[j], e) ? '1' : '0');
    return seg;
  }

  std::string encode(const std::vector<std::size_t>& p) const {
    std::string code;
    code.reserve(n * n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j <= k; ++j)
        code.push_back(x.le(p[k], p[j]) ? '1' : '0');
      for (std::size_t j = 0; j < k; ++j)
        code.push_back(x.le(p[j], p[k]) ? '1' : '0');
    }
    return code;
  }

  // Incomparable elements relating identically to everything else swap by an
  // automorphism; exploring both branches is redundant.
  bool twins(std::size_t a, std::size_t b) const {
    if (x.le(a, b) || x.le(b, a)) return false;
    for (std::size_t z = 0; z < n; ++z) {
      if (z == a || z == b) continue;
      if (x.le(a, z) != x.le(b, z)) return false;
      if (x.le(z, a) != x.le(z, b)) return false;
    }
    return true;
  }

  // Branch and bound: a branch survives while its code prefix stays <= the
  // incumbent's prefix. A strictly smaller prefix immediately tightens the
  // incumbent to prefix + all-ones padding (an upper bound for every real
  // completion of the prefix), so later comparisons stay meaningful; ties at
  // full depth leave the incumbent as the realized minimum.
  void descend(std::size_t depth) {
    if (depth == n) return;
    std::vector<std::size_t> tried;
    for (std::size_t e = 0; e < n; ++e) {
      if (used[e]) continue;
      bool redundant = false;
      for (std::size_t t : tried)
        if (twins(t, e)) { redundant = true; break; }
      if (redundant) continue;
      tried.push_back(e);

      std::string seg = segment(depth, e);
      int cmp = seg.compare(best.substr(current.size(), seg.size()));
      if (cmp > 0) continue;
      if (cmp < 0)
        best = current + seg +
               std::string(n * n - current.size() - seg.size(), '1');
      perm[depth] = e;
      used[e] = true;
      current += seg;
      descend(depth + 1);
      current.resize(current.size() - seg.size());
      used[e] = false;
    }
  }
};

}  // namespace

CanonicalForm canonical_form(const FinitePoset& x, std::size_t budget) {
  if (x.size() > budget)
    throw budget_error("canonical form budget exceeded: " +
                       std::to_string(x.size()) + " elements > " +
                       std::to_string(budget));
  CanonSearch search(x);
  search.run();
  CanonicalForm f;
  f.size = static_cast<std::uint32_t>(x.size());
  f.code = std::move(search.best);
  return f;
}

// ---------------------------------------------------------------------------
// Partial maps and automorphisms

bool PartialMap::functional_and_injective() const {
  std::map<std::string, std::string> forward, backward;
  for (const auto& [a, b] : pairs) {
    auto f = forward.emplace(a, b);
    if (!f.second && f.first->second != b) return false;
    auto g = backward.emplace(b, a);
    if (!g.second && g.first->second != a) return false;
  }
  return true;
}

bool PartialMap::is_partial_isomorphism(const FinitePoset& from,
                                        const FinitePoset& to) const {
  if (!functional_and_injective()) return false;
  for (const auto& [a, b] : pairs) {
    if (!from.index_of(a) || !to.index_of(b)) return false;
  }
  for (const auto& [a, b] : pairs)
    for (const auto& [a2, b2] : pairs) {
      if (from.le(a, a2) != to.le(b, b2)) return false;
    }
  return true;
}

std::optional<std::string> PartialMap::image_of(const std::string& source) const {
  for (const auto& [a, b] : pairs)
    if (a == source) return b;
  return std::nullopt;
}

namespace {

constexpr std::size_t kMaxAutomorphisms = 250000;

void find_automorphisms(const FinitePoset& x, std::vector<std::size_t>& image,
                        std::vector<bool>& used, std::size_t depth,
                        std::vector<PartialMap>& out) {
  const std::size_t n = x.size();
  if (depth == n) {
    if (out.size() >= kMaxAutomorphisms)
      throw budget_error("automorphism group too large to enumerate");
    PartialMap map;
    for (std::size_t i = 0; i < n; ++i)
      map.pairs.emplace_back(x.element(i), x.element(image[i]));
    out.push_back(std::move(map));
    return;
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (used[t]) continue;
    bool ok = true;
    for (std::size_t j = 0; j <= depth && ok; ++j) {
      std::size_t b = (j == depth) ? t : image[j];
      if (x.le(depth, j) != x.le(t, b)) ok = false;
      if (x.le(j, depth) != x.le(b, t)) ok = false;
    }
    if (!ok) continue;
    image[depth] = t;
    used[t] = true;
    find_automorphisms(x, image, used, depth + 1, out);
    used[t] = false;
  }
}

}  // namespace

std::vector<PartialMap> automorphisms(const FinitePoset& x, std::size_t budget) {
  if (x.size() > budget)
    throw budget_error("automorphism budget exceeded: " +
                       std::to_string(x.size()) + " elements > " +
                       std::to_string(budget));
  std::vector<std::size_t> image(x.size(), 0);
  std::vector<bool> used(x.size(), false);
  std::vector<PartialMap> out;
  find_automorphisms(x, image, used, 0, out);
  return out;
}

}  // namespace posetlab
