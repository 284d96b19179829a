#include "catalog.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace posetlab {

std::vector<std::vector<std::size_t>> order_ideals(const FinitePoset& x) {
  const std::size_t n = x.size();
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    bool closed = true;
    for (std::size_t s = 0; s < n && closed; ++s) {
      if (!(mask & (std::size_t{1} << s))) continue;
      for (std::size_t z = 0; z < n && closed; ++z)
        if (x.le(z, s) && !(mask & (std::size_t{1} << z))) closed = false;
    }
    if (!closed) continue;
    std::vector<std::size_t> ideal;
    for (std::size_t s = 0; s < n; ++s)
      if (mask & (std::size_t{1} << s)) ideal.push_back(s);
    out.push_back(std::move(ideal));
  }
  return out;
}

namespace {

FinitePoset extend_above_ideal(const FinitePoset& x,
                               const std::vector<std::size_t>& ideal) {
  const std::size_t n = x.size();
  std::vector<std::string> names = x.elements();
  std::string fresh(1, static_cast<char>('a' + n % 26));
  if (n >= 26) fresh += std::to_string(n / 26);
  names.push_back(fresh);
  const std::size_t m = n + 1;
  std::vector<uint8_t> mat(m * m, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (x.le(i, j)) mat[i * m + j] = 1;
  mat[n * m + n] = 1;
  for (std::size_t d : ideal) mat[d * m + n] = 1;
  return FinitePoset(std::move(names), std::move(mat));
}

std::vector<FinitePoset> generate_size(std::size_t n,
                                       const std::vector<FinitePoset>& smaller) {
  std::map<CanonicalForm, FinitePoset> forms;
  if (n == 1) {
    CanonicalForm f = canonical_form(singleton("a"));
    forms.emplace(f, f.representative());
  } else {
    for (const FinitePoset& base : smaller)
      for (const auto& ideal : order_ideals(base)) {
        FinitePoset bigger = extend_above_ideal(base, ideal);
        CanonicalForm f = canonical_form(bigger);
        if (!forms.count(f)) forms.emplace(f, f.representative());
      }
  }
  std::vector<FinitePoset> out;
  out.reserve(forms.size());
  for (auto& [f, rep] : forms) out.push_back(std::move(rep));
  return out;
}

}  // namespace

const std::vector<FinitePoset>& all_posets(std::size_t n, std::size_t budget) {
  if (n == 0) throw semantic_error("posets have nonempty domains");
  if (n > budget || n > kCanonicalBudget)
    throw budget_error("poset catalog budget exceeded: size " + std::to_string(n));
  static std::mutex mu;
  // unique_ptr keeps returned references stable while the cache grows
  static std::vector<std::unique_ptr<std::vector<FinitePoset>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() < n) {
    std::size_t next = cache.size() + 1;
    const std::vector<FinitePoset> empty;
    cache.push_back(std::make_unique<std::vector<FinitePoset>>(
        generate_size(next, next == 1 ? empty : *cache[next - 2])));
  }
  return *cache[n - 1];
}

std::vector<FinitePoset> all_posets_upto(std::size_t n, std::size_t budget) {
  std::vector<FinitePoset> out;
  for (std::size_t k = 1; k <= n; ++k)
    for (const auto& p : all_posets(k, budget)) out.push_back(p);
  return out;
}

}  // namespace posetlab
