#include "ultracat/endsemi.hpp"

#include "ultracat/dendro.hpp"
#include "ultracat/error.hpp"

#include <algorithm>
#include <numeric>

namespace ultracat {

namespace {

bool same_labeled_space(const UltraSpace& a, const UltraSpace& b) {
  return a.labels == b.labels && a.dist == b.dist;
}

void require_endo(const Morphism& p) {
  if (!same_labeled_space(p.source, p.target)) throw DomainError("NotEndomorphism");
}

// the largest of the three values must be attained at least twice
bool isosceles(const Rat& a, const Rat& b, const Rat& c) {
  const Rat& m = std::max({a, b, c});
  int hits = (a == m) + (b == m) + (c == m);
  return hits >= 2;
}

}  // namespace

void validate_near_unit(const NearUnit& z) {
  const auto& s = z.space;
  if (static_cast<int>(z.lambdas.size()) != s.n())
    throw DomainError("InadmissibleLambda", {{"reason", "size mismatch"}});
  for (int x = 0; x < s.n(); ++x) {
    const Rat& l = z.lambdas[x];
    if (l < 0) throw DomainError("InadmissibleLambda", {{"point", s.labels[x]}});
    if (s.lambda && l != 0 && !s.lambda->contains(l))
      throw DomainError("InadmissibleLambda",
                        {{"point", s.labels[x]}, {"reason", "level not in the spectrum set"}});
    if (!(ExtRat(l) < isolation(s, x)))
      throw DomainError("InadmissibleLambda",
                        {{"point", s.labels[x]}, {"reason", "level reaches the isolation radius"}});
  }
}

Morphism near_unit_morphism(const NearUnit& z) {
  validate_near_unit(z);
  const auto& s = z.space;
  const int n = s.n();
  std::vector<Rat> d(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[static_cast<size_t>(i) * n + j] = (i == j) ? z.lambdas[i] : s.d(i, j);
  return morphism_from_delta(s, s, std::move(d));
}

NearUnit near_unit_product(const NearUnit& z, const NearUnit& w) {
  if (!same_labeled_space(z.space, w.space)) throw DomainError("SpaceMismatch");
  NearUnit out;
  out.space = z.space;
  out.lambdas.resize(z.lambdas.size());
  for (size_t i = 0; i < z.lambdas.size(); ++i)
    out.lambdas[i] = std::max(z.lambdas[i], w.lambdas[i]);
  return out;
}

Morphism iso_morphism(const UltraSpace& x, const std::vector<int>& perm) {
  if (!is_isometry(x, perm)) throw DomainError("NotIsometric");
  const int n = x.n();
  std::vector<Rat> d(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[static_cast<size_t>(i) * n + j] = x.d(perm[i], j);
  return morphism_from_delta(x, x, std::move(d));
}

Morphism near_automorphism_morphism(const NearAutomorphism& a) {
  return compose(near_unit_morphism(a.z), iso_morphism(a.z.space, a.kappa));
}

EndoClass classify_endo(const Morphism& p) {
  require_endo(p);
  const auto& s = p.source;
  const int n = s.n();
  std::vector<int> kappa(n, -1);
  std::vector<int> used(n, -1);
  NearUnit z;
  z.space = s;
  z.lambdas.resize(n);
  for (int x = 0; x < n; ++x) {
    int target = -1;
    for (int y = 0; y < n; ++y)
      if (ExtRat(delta_at(p, x, y)) < isolation(s, y)) {
        target = y;  // at most one by the ultrametric splitting of target balls
        break;
      }
    if (target < 0) return NotNearAutomorphism{x, "no nearby target"};
    if (used[target] >= 0) return NotNearAutomorphism{x, "collision"};
    used[target] = x;
    kappa[x] = target;
    z.lambdas[x] = delta_at(p, x, target);
  }
  return NearAutomorphism{std::move(kappa), std::move(z)};
}

bool is_selfadjoint_idempotent(const Morphism& p) {
  require_endo(p);
  return morphism_eq(p, involution(p)) && morphism_eq(compose(p, p), p);
}

IdempotentFactorization idempotent_factor(const Morphism& q) {
  require_endo(q);
  if (!morphism_eq(compose(q, q), q)) throw DomainError("NotIdempotent");
  if (std::holds_alternative<NearAutomorphism>(classify_endo(q)))
    throw DomainError("IsNearAutomorphism");

  const auto& s = q.source;
  const int n = s.n();
  std::vector<Rat> m(n);  // entry level of each domain ray
  for (int x = 0; x < n; ++x) m[x] = delta_at(q, x, x);

  // highest internal node with a child branch no domain ray enters
  auto tree = build_tree(s);
  int pick = -1;
  for (int v = 0; v < static_cast<int>(tree.nodes.size()); ++v) {
    if (tree.is_leaf(v)) continue;
    for (int w : tree.at(v).children) {
      bool missing = true;
      for (int zpt : tree.at(w).members) missing = missing && m[zpt] >= tree.at(v).height;
      if (!missing) continue;
      if (pick < 0 || tree.at(v).height > tree.at(tree.at(pick).parent).height) pick = w;
    }
  }
  if (pick < 0) throw DomainError("IsNearAutomorphism");  // unreachable after the checks above

  const auto& dropped = tree.at(pick).members;
  std::vector<int> y_idx;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(dropped.begin(), dropped.end(), i)) y_idx.push_back(i);

  UltraSpace y = restrict_space(s, y_idx);
  std::vector<int> pos_in_y(n, -1);
  for (size_t k = 0; k < y_idx.size(); ++k) pos_in_y[y_idx[k]] = static_cast<int>(k);

  PartialTreeIso f;
  f.src = s;
  f.dst = y;
  for (int x = 0; x < n; ++x) {
    int ref = -1;
    if (pos_in_y[x] >= 0) {
      ref = pos_in_y[x];
    } else {
      for (int k = 0; k < static_cast<int>(y_idx.size()); ++k)
        if (s.d(x, y_idx[k]) <= m[x]) {
          ref = k;
          break;
        }
    }
    f.gens.push_back({TreePoint{x, m[x]}, TreePoint{ref, m[x]}});
  }
  IdempotentFactorization out;
  out.y_indices = std::move(y_idx);
  out.t = from_partial_iso(f);
  return out;
}

namespace {

void enumerate_rec(const UltraSpace& s, const std::vector<Rat>& levels, std::vector<Rat>& cell,
                   size_t idx, std::vector<std::vector<Rat>>& out) {
  const int n = s.n();
  if (idx == cell.size()) {
    out.push_back(cell);
    return;
  }
  const int i = static_cast<int>(idx) / n;
  const int j = static_cast<int>(idx) % n;
  for (const auto& v : levels) {
    bool ok = true;
    for (int j2 = 0; ok && j2 < j; ++j2)
      ok = isosceles(v, cell[static_cast<size_t>(i) * n + j2], s.d(j, j2));
    for (int i2 = 0; ok && i2 < i; ++i2)
      ok = isosceles(v, cell[static_cast<size_t>(i2) * n + j], s.d(i, i2));
    if (!ok) continue;
    cell[idx] = v;
    enumerate_rec(s, levels, cell, idx + 1, out);
  }
}

}  // namespace

std::vector<std::vector<Rat>> all_endo_deltas(const UltraSpace& x) {
  if (!x.lambda) throw DomainError("MissingLambda");
  std::vector<Rat> levels{Rat(0)};
  for (const auto& v : x.lambda->values) levels.push_back(v);
  std::vector<std::vector<Rat>> out;
  std::vector<Rat> cell(static_cast<size_t>(x.n()) * x.n(), Rat(0));
  enumerate_rec(x, levels, cell, 0, out);
  return out;
}

std::vector<Morphism> all_endomorphisms(const UltraSpace& x) {
  std::vector<Morphism> out;
  for (auto& d : all_endo_deltas(x)) out.push_back(morphism_from_delta(x, x, std::move(d)));
  return out;
}

}  // namespace ultracat
