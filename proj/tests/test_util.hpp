#pragma once

// Shared helpers for the test binaries: tiny fixture spaces, a recursive
// random ultrametric generator independent of the library code paths, and a
// brute-force triple oracle.

#include "ultracat/space.hpp"

#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace testutil {

using ultracat::BallKind;
using ultracat::Rat;
using ultracat::UltraSpace;

inline std::vector<std::string> labels_n(int n, const std::string& prefix = "p") {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline UltraSpace space3(const std::string& la, const std::string& lb, const std::string& lc,
                         const Rat& ab, const Rat& ac, const Rat& bc) {
  return ultracat::make_space({la, lb, lc},
                              {Rat(0), ab, ac, ab, Rat(0), bc, ac, bc, Rat(0)});
}

// d(a,b)=1, d(a,c)=d(b,c)=2: the workhorse three point fixture
inline UltraSpace tri122() { return space3("a", "b", "c", Rat(1), Rat(2), Rat(2)); }

inline UltraSpace equilateral(int n, const Rat& d) {
  std::vector<Rat> m(static_cast<size_t>(n) * n, d);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 0;
  return ultracat::make_space(labels_n(n), std::move(m));
}

// all ordered triples, straight from the definition
inline bool triples_ok(const std::vector<Rat>& m, int n) {
  auto at = [&](int i, int j) -> const Rat& { return m[static_cast<size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (at(i, k) > std::max(at(i, j), at(j, k))) return false;
      }
  return true;
}

namespace detail {
inline void fill_block(std::mt19937_64& rng, std::vector<Rat>& m, int n, std::vector<int> pts,
                       const std::vector<Rat>& levels, size_t li) {
  if (pts.size() < 2) return;
  std::shuffle(pts.begin(), pts.end(), rng);
  // split into >= 2 contiguous groups; at the last level everything splits apart
  std::vector<size_t> cuts;
  if (li + 1 >= levels.size()) {
    for (size_t c = 1; c < pts.size(); ++c) cuts.push_back(c);
  } else {
    std::uniform_int_distribution<size_t> cd(1, pts.size() - 1);
    size_t want = cd(rng);
    std::vector<size_t> all;
    for (size_t c = 1; c < pts.size(); ++c) all.push_back(c);
    std::shuffle(all.begin(), all.end(), rng);
    cuts.assign(all.begin(), all.begin() + want);
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(pts.size());
  size_t start = 0;
  std::vector<std::vector<int>> groups;
  for (size_t c : cuts) {
    groups.emplace_back(pts.begin() + start, pts.begin() + c);
    start = c;
  }
  for (size_t a = 0; a < groups.size(); ++a)
    for (size_t b = a + 1; b < groups.size(); ++b)
      for (int x : groups[a])
        for (int y : groups[b]) {
          m[static_cast<size_t>(x) * n + y] = levels[li];
          m[static_cast<size_t>(y) * n + x] = levels[li];
        }
  for (auto& g : groups) fill_block(rng, m, n, std::move(g), levels, li + 1);
}
}  // namespace detail

// Random ultrametric with spectrum inside `pool`, generated by recursive
// splitting at strictly descending heights.
inline UltraSpace rand_space(std::mt19937_64& rng, int n, std::vector<Rat> pool,
                             const std::string& prefix = "p") {
  std::sort(pool.begin(), pool.end());
  std::vector<Rat> levels(pool.rbegin(), pool.rend());  // descending
  std::vector<Rat> m(static_cast<size_t>(n) * n, Rat(0));
  std::vector<int> pts(n);
  std::iota(pts.begin(), pts.end(), 0);
  detail::fill_block(rng, m, n, std::move(pts), levels, 0);
  return ultracat::make_space(labels_n(n, prefix), std::move(m));
}

}  // namespace testutil
