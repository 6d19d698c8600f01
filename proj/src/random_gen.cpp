#include "ultracat/random_gen.hpp"

#include "ultracat/cosets.hpp"

#include <algorithm>
#include <set>

namespace ultracat {

namespace {

std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

NguyenPoint random_point(std::mt19937_64& rng, const std::vector<Rat>& pool,
                         long long spread) {
  NguyenPoint p;
  const long long width = 2 * spread + 1;
  for (const auto& k : pool)
    p.set(k, static_cast<long long>(rng() % static_cast<unsigned long long>(width)) - spread);
  return p;
}

std::vector<NguyenPoint> random_configuration(std::mt19937_64& rng, int n,
                                              const std::vector<Rat>& pool) {
  // widen the per-coordinate range until the grid holds n points comfortably
  long long spread = 2;
  double capacity = 1.0;
  for (size_t i = 0; i < pool.size(); ++i) capacity *= 2 * spread + 1;
  while (capacity < 4.0 * n) {
    ++spread;
    capacity = 1.0;
    for (size_t i = 0; i < pool.size(); ++i) capacity *= 2 * spread + 1;
  }
  std::vector<NguyenPoint> out;
  while (static_cast<int>(out.size()) < n) {
    auto p = random_point(rng, pool, spread);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

UltraSpace random_space(std::mt19937_64& rng, int n, const std::vector<Rat>& pool,
                        const std::string& prefix) {
  return induced_space(numbered(prefix, n), random_configuration(rng, n, pool));
}

Morphism random_morphism(std::mt19937_64& rng, const std::vector<Rat>& pool, int nx,
                         int ny) {
  const auto xs = random_configuration(rng, nx, pool);
  const auto ys = random_configuration(rng, ny, pool);
  return morphism_from_configuration(xs, ys, xs, numbered("x", nx), numbered("y", ny));
}

std::pair<Morphism, Morphism> random_chain(std::mt19937_64& rng,
                                           const std::vector<Rat>& pool, int nx, int ny,
                                           int nz) {
  const auto xs = random_configuration(rng, nx, pool);
  const auto ys = random_configuration(rng, ny, pool);
  const auto zs = random_configuration(rng, nz, pool);
  return {morphism_from_configuration(xs, ys, xs, numbered("x", nx), numbered("y", ny)),
          morphism_from_configuration(ys, zs, ys, numbered("y", ny), numbered("z", nz))};
}

ModelIsometry random_isometry(std::mt19937_64& rng, const std::vector<Rat>& pool,
                              int moves) {
  ModelIsometry g;
  for (int i = 0; i < moves; ++i) {
    if (rng() % 2 == 0) {
      ThetaMove t;
      t.y = random_configuration(rng, 1 + static_cast<int>(rng() % 2), pool);
      t.j = 1 + static_cast<long long>(rng() % 3);
      g.push_back(t);
    } else {
      // germ transposition: two open balls of equal radius around one stem
      const Rat s = pool[rng() % pool.size()];
      NguyenPoint w1 = random_point(rng, pool), w2 = w1;
      const long long a = static_cast<long long>(rng() % 5) - 2;
      w1.set(s, a);
      w2.set(s, a + 1 + static_cast<long long>(rng() % 3));
      g.push_back(SwapMove{ball_of(w1, BallKind::open, s), ball_of(w2, BallKind::open, s)});
    }
  }
  return g;
}

std::vector<Rat> random_pool(std::mt19937_64& rng, int top, int max_size) {
  const int want = 1 + static_cast<int>(rng() % static_cast<unsigned long long>(max_size));
  std::set<long long> chosen;
  while (static_cast<int>(chosen.size()) < want)
    chosen.insert(1 + static_cast<long long>(rng() % static_cast<unsigned long long>(top)));
  std::vector<Rat> out;
  for (long long v : chosen) out.push_back(Rat(v));
  return out;
}

}  // namespace ultracat
