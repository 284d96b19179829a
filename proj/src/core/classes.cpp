#include "classes.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fld.hpp"

namespace posetlab {

bool is_linear(const FinitePoset& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x.incomparable(i, j)) return false;
  return true;
}

bool is_tree(const FinitePoset& x) {
  for (std::size_t e = 0; e < x.size(); ++e) {
    std::vector<std::size_t> down;
    for (std::size_t z = 0; z < x.size(); ++z)
      if (x.le(z, e)) down.push_back(z);
    for (std::size_t a = 0; a < down.size(); ++a)
      for (std::size_t b = a + 1; b < down.size(); ++b)
        if (x.incomparable(down[a], down[b])) return false;
  }
  return true;
}

bool is_reversed_tree(const FinitePoset& x) { return is_tree(reverse(x)); }

FinitePoset n_poset() {
  return FinitePoset::from_relation({"a", "b", "c", "d"},
                                    {{"a", "c"}, {"b", "c"}, {"b", "d"}});
}

bool is_reticle(const FinitePoset& x) {
  const std::size_t n = x.size();
  if (n < 4) return true;
  // order-embedding of N = (a<c, b<c, b<d, all else incomparable)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a) continue;
      if (!x.incomparable(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (!x.lt(a, c) || !x.lt(b, c)) continue;
        for (std::size_t d = 0; d < n; ++d) {
          if (d == a || d == b || d == c) continue;
          if (x.lt(b, d) && x.incomparable(a, d) && x.incomparable(c, d))
            return false;
        }
      }
    }
  return true;
}

FinitePoset powerset_lattice(std::size_t m) {
  const std::size_t n = std::size_t{1} << m;
  std::vector<std::string> names;
  for (std::size_t s = 0; s < n; ++s) names.push_back("s" + std::to_string(s));
  std::vector<uint8_t> mat(n * n, 0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      if ((s & t) == s) mat[s * n + t] = 1;
  return FinitePoset(std::move(names), std::move(mat));
}

bool is_boolean_algebra(const FinitePoset& x, std::size_t canon_budget) {
  std::size_t n = x.size();
  std::size_t m = 0;
  while ((std::size_t{1} << m) < n) ++m;
  if ((std::size_t{1} << m) != n) return false;
  return canonical_form(x, canon_budget) ==
         canonical_form(powerset_lattice(m), canon_budget);
}

bool is_antichain(const FinitePoset& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (!x.incomparable(i, j)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// ClassSpec

std::string to_string(NamedClass c) {
  switch (c) {
    case NamedClass::Linear: return "linear";
    case NamedClass::Tree: return "tree";
    case NamedClass::ReversedTree: return "reversed-tree";
    case NamedClass::Reticle: return "reticle";
    case NamedClass::BooleanAlgebra: return "boolean-algebra";
    case NamedClass::HasMin: return "has-min";
    case NamedClass::HasMax: return "has-max";
    case NamedClass::Antichain: return "antichain";
    case NamedClass::AllFinite: return "all-finite";
    case NamedClass::SingletonOnly: return "singleton-only";
  }
  return "?";
}

namespace {

std::optional<NamedClass> named_from_string(const std::string& s) {
  static const std::map<std::string, NamedClass> table = {
      {"linear", NamedClass::Linear},
      {"tree", NamedClass::Tree},
      {"reversed-tree", NamedClass::ReversedTree},
      {"reticle", NamedClass::Reticle},
      {"boolean-algebra", NamedClass::BooleanAlgebra},
      {"has-min", NamedClass::HasMin},
      {"has-max", NamedClass::HasMax},
      {"antichain", NamedClass::Antichain},
      {"all-finite", NamedClass::AllFinite},
      {"singleton-only", NamedClass::SingletonOnly},
  };
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool named_contains(NamedClass c, const FinitePoset& x) {
  switch (c) {
    case NamedClass::Linear: return is_linear(x);
    case NamedClass::Tree: return is_tree(x);
    case NamedClass::ReversedTree: return is_reversed_tree(x);
    case NamedClass::Reticle: return is_reticle(x);
    case NamedClass::BooleanAlgebra: return is_boolean_algebra(x);
    case NamedClass::HasMin: return x.has_min();
    case NamedClass::HasMax: return x.has_max();
    case NamedClass::Antichain: return is_antichain(x);
    case NamedClass::AllFinite: return true;
    case NamedClass::SingletonOnly: return x.size() == 1;
  }
  return false;
}

}  // namespace

ClassSpec ClassSpec::named(NamedClass base, bool require_min, bool require_max) {
  ClassSpec spec;
  spec.base_ = base;
  spec.require_min_ = require_min;
  spec.require_max_ = require_max;
  return spec;
}

ClassSpec ClassSpec::from_seeds(std::vector<FinitePoset> seeds) {
  if (seeds.empty()) throw semantic_error("seed class needs at least one poset");
  ClassSpec spec;
  spec.seeded_ = true;
  for (auto& p : seeds) {
    CanonicalForm f = canonical_form(p);
    if (spec.seed_forms_.insert(f).second)
      spec.seed_reps_.push_back(f.representative());
  }
  return spec;
}

ClassSpec ClassSpec::parse(const std::string& expression) {
  if (expression.rfind("seeds:", 0) == 0) {
    std::string path = expression.substr(6);
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open seeds file: " + path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw parse_error(std::string("invalid seeds json: ") + e.what());
    }
    if (!j.is_array()) throw parse_error("seeds file must hold a json array of posets");
    std::vector<FinitePoset> seeds;
    for (const auto& p : j) seeds.push_back(poset_from_json(p));
    return from_seeds(std::move(seeds));
  }
  std::vector<std::string> parts;
  std::stringstream ss(expression);
  std::string item;
  while (std::getline(ss, item, '&')) parts.push_back(item);
  if (parts.empty()) throw parse_error("empty class expression");
  auto base = named_from_string(parts[0]);
  if (!base) throw parse_error("unknown class \"" + parts[0] + "\"");
  bool req_min = false, req_max = false;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] == "has-min")
      req_min = true;
    else if (parts[i] == "has-max")
      req_max = true;
    else
      throw parse_error("only has-min / has-max may qualify a class, got \"" +
                        parts[i] + "\"");
  }
  return named(*base, req_min, req_max);
}

bool ClassSpec::contains(const FinitePoset& x) const {
  if (seeded_) return seed_forms_.count(canonical_form(x)) > 0;
  if (require_min_ && !x.has_min()) return false;
  if (require_max_ && !x.has_max()) return false;
  return named_contains(base_, x);
}

std::vector<FinitePoset> ClassSpec::representatives(std::size_t size) const {
  std::vector<FinitePoset> out;
  if (seeded_) {
    for (const auto& rep : seed_reps_)
      if (rep.size() == size) out.push_back(rep);
    return out;
  }
  for (const auto& rep : all_posets(size))
    if (contains(rep)) out.push_back(rep);
  return out;
}

std::string ClassSpec::describe() const {
  if (seeded_) return "seeds(" + std::to_string(seed_forms_.size()) + ")";
  std::string s = to_string(base_);
  if (require_min_) s += "&has-min";
  if (require_max_) s += "&has-max";
  return s;
}

// ---------------------------------------------------------------------------
// Closure operators

std::string to_string(ClosureOp op) {
  switch (op) {
    case ClosureOp::Sigma: return "sigma";
    case ClosureOp::SigmaRooted: return "sigma-rooted";
    case ClosureOp::UnionProduct: return "union-product";
  }
  return "?";
}

ClosureOp closure_op_from_string(const std::string& text) {
  if (text == "sigma") return ClosureOp::Sigma;
  if (text == "sigma-rooted") return ClosureOp::SigmaRooted;
  if (text == "union-product") return ClosureOp::UnionProduct;
  throw parse_error("unknown closure operator \"" + text +
                    "\" (want sigma, sigma-rooted or union-product)");
}

std::set<CanonicalForm> ClosureResult::members() const {
  std::set<CanonicalForm> out;
  for (const auto& stage : stages) out.insert(stage.begin(), stage.end());
  return out;
}

Json ClosureResult::to_json() const {
  Json j;
  j["operator"] = to_string(op);
  j["bound"] = bound;
  Json st = Json::array();
  for (const auto& stage : stages) {
    Json codes = Json::array();
    for (const auto& f : stage) codes.push_back(f.to_string());
    st.push_back(std::move(codes));
  }
  j["stages"] = std::move(st);
  j["stabilized_at"] = stabilized_at;
  return j;
}

namespace {

void check_bound(std::size_t bound, std::size_t budget) {
  if (bound == 0) throw semantic_error("closure bound must be positive");
  if (bound > budget || bound > kCatalogBudget)
    throw budget_error("closure bound " + std::to_string(bound) +
                       " exceeds the enumeration budget");
}

using FormSet = std::set<CanonicalForm>;
using RepMap = std::map<CanonicalForm, FinitePoset>;

std::vector<FinitePoset> reps_of(const RepMap& reps) {
  std::vector<FinitePoset> out;
  out.reserve(reps.size());
  for (const auto& [f, rep] : reps) out.push_back(rep);
  return out;
}

RepMap base_members(const ClassSpec& base, std::size_t bound) {
  RepMap out;
  for (std::size_t s = 1; s <= bound; ++s)
    for (const auto& rep : base.representatives(s))
      out.emplace(canonical_form(rep), rep);
  return out;
}

/// All sums Sigma_I X_i with I ranging over index types of size <= bound,
/// summands drawn from `pool` (grouped by size), total size <= bound.
void generate_sums(const std::vector<FinitePoset>& pool, std::size_t bound,
                   const std::function<void(FinitePoset)>& emit) {
  std::map<std::size_t, std::vector<const FinitePoset*>> by_size;
  std::size_t min_size = bound;
  for (const auto& p : pool) {
    by_size[p.size()].push_back(&p);
    min_size = std::min(min_size, p.size());
  }
  if (by_size.empty()) return;
  for (std::size_t isize = 1; isize * min_size <= bound; ++isize) {
    for (const auto& index : all_posets(isize)) {
      std::map<std::string, FinitePoset> chosen;
      std::function<void(std::size_t, std::size_t)> assign =
          [&](std::size_t pos, std::size_t used) {
            if (pos == isize) {
              emit(lex_sum(index, chosen));
              return;
            }
            std::size_t slots_left = isize - pos - 1;
            for (const auto& [sz, reps] : by_size) {
              if (used + sz + slots_left * min_size > bound) break;
              for (const FinitePoset* rep : reps) {
                chosen.insert_or_assign(index.element(pos), *rep);
                assign(pos + 1, used + sz);
              }
            }
            chosen.erase(index.element(pos));
          };
      assign(0, 0);
    }
  }
}

std::vector<std::vector<CanonicalForm>> stage_vectors(
    const std::vector<FormSet>& stages) {
  std::vector<std::vector<CanonicalForm>> out;
  for (const auto& s : stages) out.emplace_back(s.begin(), s.end());
  return out;
}

}  // namespace

std::set<CanonicalForm> sigma_one_step(const ClassSpec& base, std::size_t bound,
                                       std::size_t budget) {
  check_bound(bound, budget);
  RepMap baseline = base_members(base, bound);
  FormSet out;
  generate_sums(reps_of(baseline), bound,
                [&](FinitePoset sum) { out.insert(canonical_form(sum)); });
  return out;
}

std::set<CanonicalForm> sigma_fixpoint(const ClassSpec& base, std::size_t bound,
                                       std::size_t budget) {
  check_bound(bound, budget);
  RepMap reach = base_members(base, bound);
  bool grew = true;
  while (grew) {
    grew = false;
    FormSet fresh;
    generate_sums(reps_of(reach), bound, [&](FinitePoset sum) {
      CanonicalForm f = canonical_form(sum);
      if (!reach.count(f)) fresh.insert(f);
    });
    for (const auto& f : fresh) {
      reach.emplace(f, f.representative());
      grew = true;
    }
  }
  FormSet out;
  for (const auto& [f, rep] : reach) out.insert(f);
  return out;
}

ClosureResult closure_sigma(const ClassSpec& base, std::size_t bound,
                            std::size_t budget) {
  check_bound(bound, budget);
  RepMap baseline = base_members(base, bound);
  FormSet base_forms;
  for (const auto& [f, rep] : baseline) base_forms.insert(f);

  FormSet one_step = sigma_one_step(base, bound, budget);
  FormSet fixpoint = sigma_fixpoint(base, bound, budget);
  if (one_step != fixpoint)
    throw std::logic_error("sigma closure: one-step and fixpoint disagree");

  ClosureResult result;
  result.op = ClosureOp::Sigma;
  result.bound = bound;
  std::vector<FormSet> stages;
  stages.push_back(base_forms);
  FormSet novel;
  for (const auto& f : one_step)
    if (!base_forms.count(f)) novel.insert(f);
  if (!novel.empty()) stages.push_back(novel);
  result.stages = stage_vectors(stages);
  result.stabilized_at = std::max<std::size_t>(1, stages.size() - 1);
  return result;
}

ClosureResult closure_sigma_rooted(const ClassSpec& base, std::size_t bound,
                                   std::size_t budget) {
  check_bound(bound, budget);
  RepMap reach = base_members(base, bound);
  std::vector<FormSet> stages;
  {
    FormSet s0;
    for (const auto& [f, rep] : reach) s0.insert(f);
    stages.push_back(std::move(s0));
  }
  while (true) {
    // root every member reached so far, then take one lexicographic-sum step
    RepMap rooted_pool;
    for (const auto& [f, rep] : reach) {
      FinitePoset r = rooted(rep);
      if (r.size() > bound) continue;
      CanonicalForm rf = canonical_form(r);
      rooted_pool.emplace(rf, rf.representative());
    }
    FormSet fresh;
    generate_sums(reps_of(rooted_pool), bound, [&](FinitePoset sum) {
      CanonicalForm f = canonical_form(sum);
      if (!reach.count(f)) fresh.insert(f);
    });
    if (fresh.empty()) break;
    for (const auto& f : fresh) reach.emplace(f, f.representative());
    stages.push_back(std::move(fresh));
  }
  ClosureResult result;
  result.op = ClosureOp::SigmaRooted;
  result.bound = bound;
  result.stages = stage_vectors(stages);
  result.stabilized_at = std::max<std::size_t>(1, stages.size() - 1);
  return result;
}

namespace {

/// Products of base members: every single member, plus all multisets of
/// members of size >= 2 with size product within the bound.
RepMap product_pool(const ClassSpec& base, std::size_t bound) {
  RepMap singles = base_members(base, bound);
  RepMap out = singles;
  std::vector<FinitePoset> factors;
  for (const auto& [f, rep] : singles)
    if (rep.size() >= 2) factors.push_back(rep);
  std::vector<const FinitePoset*> stack;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                          std::size_t product) {
    if (stack.size() >= 2) {
      std::vector<FinitePoset> parts;
      for (const auto* p : stack) parts.push_back(*p);
      FinitePoset prod = direct_product(parts);
      CanonicalForm f = canonical_form(prod);
      out.emplace(f, f.representative());
    }
    for (std::size_t i = start; i < factors.size(); ++i) {
      std::size_t next = product * factors[i].size();
      if (next > bound) continue;
      stack.push_back(&factors[i]);
      rec(i, next);
      stack.pop_back();
    }
  };
  rec(0, 1);
  return out;
}

}  // namespace

std::set<CanonicalForm> union_product_one_step(const ClassSpec& base,
                                               std::size_t bound,
                                               std::size_t budget) {
  check_bound(bound, budget);
  RepMap products = product_pool(base, bound);
  std::vector<FinitePoset> parts_pool = reps_of(products);
  FormSet out;
  // disjoint unions: multisets with size sum <= bound
  std::vector<const FinitePoset*> stack;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                          std::size_t total) {
    if (!stack.empty()) {
      std::vector<FinitePoset> parts;
      for (const auto* p : stack) parts.push_back(*p);
      out.insert(canonical_form(disjoint_union(parts)));
    }
    for (std::size_t i = start; i < parts_pool.size(); ++i) {
      std::size_t next = total + parts_pool[i].size();
      if (next > bound) continue;
      stack.push_back(&parts_pool[i]);
      rec(i, next);
      stack.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

std::set<CanonicalForm> union_product_fixpoint(const ClassSpec& base,
                                               std::size_t bound,
                                               std::size_t budget) {
  check_bound(bound, budget);
  RepMap reach = base_members(base, bound);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<FinitePoset> pool = reps_of(reach);
    FormSet fresh;
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i; j < pool.size(); ++j) {
        if (pool[i].size() + pool[j].size() <= bound) {
          CanonicalForm f = canonical_form(disjoint_union({pool[i], pool[j]}));
          if (!reach.count(f)) fresh.insert(f);
        }
        if (pool[i].size() * pool[j].size() <= bound) {
          CanonicalForm f = canonical_form(direct_product({pool[i], pool[j]}));
          if (!reach.count(f)) fresh.insert(f);
        }
      }
    for (const auto& f : fresh) {
      reach.emplace(f, f.representative());
      grew = true;
    }
  }
  FormSet out;
  for (const auto& [f, rep] : reach) out.insert(f);
  return out;
}

ClosureResult closure_union_product(const ClassSpec& base, std::size_t bound,
                                    std::size_t budget) {
  check_bound(bound, budget);
  RepMap baseline = base_members(base, bound);
  FormSet base_forms;
  for (const auto& [f, rep] : baseline) base_forms.insert(f);

  FormSet one_step = union_product_one_step(base, bound, budget);
  FormSet fixpoint = union_product_fixpoint(base, bound, budget);
  if (one_step != fixpoint)
    throw std::logic_error("union-product closure: one-step and fixpoint disagree");

  ClosureResult result;
  result.op = ClosureOp::UnionProduct;
  result.bound = bound;
  std::vector<FormSet> stages;
  stages.push_back(base_forms);
  FormSet novel;
  for (const auto& f : one_step)
    if (!base_forms.count(f)) novel.insert(f);
  if (!novel.empty()) stages.push_back(novel);
  result.stages = stage_vectors(stages);
  result.stabilized_at = std::max<std::size_t>(1, stages.size() - 1);
  return result;
}

// ---------------------------------------------------------------------------
// Membership with witnesses

FinitePoset ConstructionWitness::rebuild() const {
  switch (kind) {
    case Kind::Base:
      return form.representative();
    case Kind::Sum:
    case Kind::RootedSum: {
      std::map<std::string, FinitePoset> summands;
      for (std::size_t i = 0; i < children.size(); ++i) {
        FinitePoset part = children[i].rebuild();
        summands.emplace(index.element(i),
                         kind == Kind::RootedSum ? rooted(part) : part);
      }
      return lex_sum(index, summands);
    }
    case Kind::Union: {
      std::vector<FinitePoset> parts;
      for (const auto& c : children) parts.push_back(c.rebuild());
      return disjoint_union(parts);
    }
    case Kind::Product: {
      std::vector<FinitePoset> parts;
      for (const auto& c : children) parts.push_back(c.rebuild());
      return direct_product(parts);
    }
  }
  return form.representative();
}

Json ConstructionWitness::to_json() const {
  Json j;
  switch (kind) {
    case Kind::Base: j["kind"] = "base"; break;
    case Kind::Sum: j["kind"] = "sum"; break;
    case Kind::RootedSum: j["kind"] = "rooted-sum"; break;
    case Kind::Union: j["kind"] = "union"; break;
    case Kind::Product: j["kind"] = "product"; break;
  }
  j["form"] = form.to_string();
  if (kind == Kind::Sum || kind == Kind::RootedSum)
    j["index"] = poset_to_json(index);
  if (kind != Kind::Base) {
    Json kids = Json::array();
    for (const auto& c : children) kids.push_back(c.to_json());
    j["children"] = std::move(kids);
  }
  return j;
}

namespace {

ConstructionWitness base_witness(const FinitePoset& x) {
  ConstructionWitness w;
  w.kind = ConstructionWitness::Kind::Base;
  w.form = canonical_form(x);
  return w;
}

FinitePoset quotient_index(const FinitePoset& x,
                           const std::vector<std::vector<std::size_t>>& blocks) {
  const std::size_t n = blocks.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  std::vector<uint8_t> mat(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    mat[i * n + i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      // autonomy established by the caller: one sample pair decides
      if (x.le(blocks[i][0], blocks[j][0])) mat[i * n + j] = 1;
    }
  }
  return FinitePoset(std::move(names), std::move(mat));
}

std::optional<ConstructionWitness> sigma_member(const FinitePoset& x,
                                                const ClassSpec& base,
                                                std::size_t budget) {
  if (base.contains(x)) return base_witness(x);
  for (const auto& blocks : autonomous_partitions(x, budget)) {
    if (blocks.size() < 2) continue;
    bool all_base = true;
    std::vector<ConstructionWitness> kids;
    for (const auto& block : blocks) {
      FinitePoset part = x.induced(block);
      if (!base.contains(part)) { all_base = false; break; }
      kids.push_back(base_witness(part));
    }
    if (!all_base) continue;
    ConstructionWitness w;
    w.kind = ConstructionWitness::Kind::Sum;
    w.form = canonical_form(x);
    w.index = quotient_index(x, blocks);
    w.children = std::move(kids);
    return w;
  }
  return std::nullopt;
}

struct SigmaRootedSearch {
  const ClassSpec& base;
  std::size_t budget;
  std::map<CanonicalForm, std::optional<ConstructionWitness>> memo;

  std::optional<ConstructionWitness> member(const FinitePoset& x) {
    CanonicalForm form = canonical_form(x);
    auto hit = memo.find(form);
    if (hit != memo.end()) return hit->second;
    memo.emplace(form, std::nullopt);  // cut cycles while in flight
    std::optional<ConstructionWitness> result = search(x, form);
    memo[form] = result;
    return result;
  }

  // x = Sigma_I (X_i)_r needs every block to carry a minimum; a block either
  // already was rooted (its interior is a member) or gained its minimum from
  // the rooting (strip it and the rest must be a min-less member).
  std::optional<ConstructionWitness> unroot_candidate(const FinitePoset& block) {
    auto inner = member(block);
    if (inner) return inner;
    auto bottom = block.least();
    if (bottom && block.size() > 1) {
      std::vector<std::size_t> rest;
      for (std::size_t e = 0; e < block.size(); ++e)
        if (e != *bottom) rest.push_back(e);
      FinitePoset stripped = block.induced(rest);
      if (!stripped.has_min()) {
        auto strip_member = member(stripped);
        if (strip_member) return strip_member;
      }
    }
    return std::nullopt;
  }

  std::optional<ConstructionWitness> search(const FinitePoset& x,
                                            const CanonicalForm& form) {
    if (base.contains(x)) return base_witness(x);
    // trivial one-block sum: x = (y)_r for a strictly smaller min-less y
    if (x.has_min() && x.size() > 1) {
      std::vector<std::size_t> rest;
      for (std::size_t e = 0; e < x.size(); ++e)
        if (e != *x.least()) rest.push_back(e);
      FinitePoset stripped = x.induced(rest);
      if (!stripped.has_min()) {
        std::optional<ConstructionWitness> inner = member(stripped);
        if (inner) {
          ConstructionWitness w;
          w.kind = ConstructionWitness::Kind::RootedSum;
          w.form = form;
          w.index = singleton("0");
          w.children = {*inner};
          return w;
        }
      }
    }
    for (const auto& blocks : autonomous_partitions(x, budget)) {
      if (blocks.size() < 2) continue;
      bool viable = true;
      std::vector<ConstructionWitness> kids;
      for (const auto& block_ids : blocks) {
        FinitePoset block = x.induced(block_ids);
        if (!block.has_min()) { viable = false; break; }
        auto kid = unroot_candidate(block);
        if (!kid) { viable = false; break; }
        kids.push_back(*kid);
      }
      if (!viable) continue;
      ConstructionWitness w;
      w.kind = ConstructionWitness::Kind::RootedSum;
      w.form = form;
      w.index = quotient_index(x, blocks);
      w.children = std::move(kids);
      return w;
    }
    return std::nullopt;
  }
};

std::vector<std::vector<std::size_t>> comparability_components(const FinitePoset& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!x.incomparable(i, j)) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

std::optional<ConstructionWitness> product_member(const FinitePoset& x,
                                                  const ClassSpec& base) {
  if (base.contains(x)) return base_witness(x);
  CanonicalForm target = canonical_form(x);
  // multisets of base members with sizes >= 2 multiplying to |x|
  std::vector<FinitePoset> factors;
  for (std::size_t s = 2; s <= x.size(); ++s) {
    if (x.size() % s != 0) continue;
    for (const auto& rep : base.representatives(s)) factors.push_back(rep);
  }
  std::vector<const FinitePoset*> stack;
  std::optional<ConstructionWitness> found;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                          std::size_t product) {
    if (found) return;
    if (product == x.size() && stack.size() >= 2) {
      std::vector<FinitePoset> parts;
      for (const auto* p : stack) parts.push_back(*p);
      FinitePoset prod = direct_product(parts);
      if (canonical_form(prod) == target) {
        ConstructionWitness w;
        w.kind = ConstructionWitness::Kind::Product;
        w.form = target;
        for (const auto& part : parts) w.children.push_back(base_witness(part));
        found = w;
      }
      return;
    }
    for (std::size_t i = start; i < factors.size() && !found; ++i) {
      std::size_t next = product * factors[i].size();
      if (next > x.size() || x.size() % next != 0) continue;
      stack.push_back(&factors[i]);
      rec(i, next);
      stack.pop_back();
    }
  };
  rec(0, 1);
  return found;
}

std::optional<ConstructionWitness> union_product_member(const FinitePoset& x,
                                                        const ClassSpec& base) {
  auto components = comparability_components(x);
  if (components.size() == 1) return product_member(x, base);
  std::vector<ConstructionWitness> kids;
  for (const auto& comp : components) {
    auto kid = product_member(x.induced(comp), base);
    if (!kid) return std::nullopt;
    kids.push_back(*kid);
  }
  ConstructionWitness w;
  w.kind = ConstructionWitness::Kind::Union;
  w.form = canonical_form(x);
  w.children = std::move(kids);
  return w;
}

}  // namespace

MembershipResult closure_membership(const FinitePoset& x, const ClassSpec& base,
                                    ClosureOp op, std::size_t budget) {
  std::size_t partition_budget = std::max(budget, kPartitionBudget);
  if (x.size() > partition_budget)
    throw budget_error("membership budget exceeded for " +
                       std::to_string(x.size()) + " elements");
  MembershipResult result;
  std::optional<ConstructionWitness> w;
  switch (op) {
    case ClosureOp::Sigma:
      w = sigma_member(x, base, partition_budget);
      break;
    case ClosureOp::SigmaRooted: {
      SigmaRootedSearch search{base, partition_budget, {}};
      w = search.member(x);
      break;
    }
    case ClosureOp::UnionProduct:
      w = union_product_member(x, base);
      break;
  }
  result.member = w.has_value();
  result.witness = std::move(w);
  return result;
}

}  // namespace posetlab
