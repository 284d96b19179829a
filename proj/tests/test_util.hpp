#pragma once

// shared test-side oracles, independent of the library's search paths

#include <vector>

#include "poset.hpp"

namespace testutil {

// every labeled poset on n points, as an le-matrix
inline std::vector<std::vector<uint8_t>> labeled_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  std::vector<std::vector<uint8_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
    std::vector<uint8_t> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask & (std::size_t{1} << s))
        m[slots[s].first * n + slots[s].second] = 1;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && m[i * n + j] && m[j * n + i]) ok = false;
        if (!m[i * n + j]) continue;
        for (std::size_t k = 0; k < n && ok; ++k)
          if (m[j * n + k] && !m[i * n + k]) ok = false;
      }
    if (ok) out.push_back(std::move(m));
  }
  return out;
}

// all partitions of {0..n-1}, blocks in least-element order
inline std::vector<std::vector<std::vector<std::size_t>>> set_partitions(
    std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::size_t> label(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i,
                                                          std::size_t used) {
    if (i == n) {
      std::vector<std::vector<std::size_t>> blocks(used);
      for (std::size_t k = 0; k < n; ++k) blocks[label[k]].push_back(k);
      out.push_back(std::move(blocks));
      return;
    }
    for (std::size_t c = 0; c <= used && c < n; ++c) {
      label[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace testutil
