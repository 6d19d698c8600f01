#include "ultracat/amalgam.hpp"

#include "ultracat/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ultracat {

namespace {

bool same_labeled_space(const UltraSpace& a, const UltraSpace& b) {
  return a.labels == b.labels && a.dist == b.dist;
}

std::string role_label(const std::vector<std::string>& xl, const std::vector<std::string>& yl,
                       const std::vector<int>& xs, const std::vector<int>& ys) {
  std::string s;
  for (int i : xs) s += "x:" + xl[i] + ";";
  for (int j : ys) s += "y:" + yl[j] + ";";
  s.pop_back();
  return s;
}

}  // namespace

void validate_morphism(const Morphism& m) {
  const int n = m.source.n(), k = m.target.n(), np = m.amal.n();
  if (static_cast<int>(m.plus.size()) != n || static_cast<int>(m.minus.size()) != k)
    throw DomainError("InvalidMorphism", {{"reason", "map sizes"}});
  std::vector<char> hit(np, 0);
  for (int i = 0; i < n; ++i) {
    if (m.plus[i] < 0 || m.plus[i] >= np) throw DomainError("InvalidMorphism");
    hit[m.plus[i]] = 1;
    for (int j = i + 1; j < n; ++j)
      if (m.amal.d(m.plus[i], m.plus[j]) != m.source.d(i, j))
        throw DomainError("InvalidMorphism", {{"reason", "source embedding not isometric"}});
  }
  for (int i = 0; i < k; ++i) {
    if (m.minus[i] < 0 || m.minus[i] >= np) throw DomainError("InvalidMorphism");
    hit[m.minus[i]] = 1;
    for (int j = i + 1; j < k; ++j)
      if (m.amal.d(m.minus[i], m.minus[j]) != m.target.d(i, j))
        throw DomainError("InvalidMorphism", {{"reason", "target embedding not isometric"}});
  }
  for (int i = 0; i < np; ++i)
    if (!hit[i]) throw DomainError("InvalidMorphism", {{"reason", "amalgam not covered"}});
}

Morphism identity_morphism(const UltraSpace& x) {
  Morphism m;
  m.source = x;
  m.target = x;
  m.amal = x;
  m.plus.resize(x.n());
  std::iota(m.plus.begin(), m.plus.end(), 0);
  m.minus = m.plus;
  return m;
}

Amalgamated amalgamate(const UltraSpace& x, const UltraSpace& y,
                       const std::vector<std::pair<int, int>>& overlap) {
  if (overlap.empty()) throw DomainError("NoAmalgamWithoutOverlap");
  {
    std::set<int> xs, ys;
    for (auto [a, b] : overlap) {
      if (a < 0 || a >= x.n() || b < 0 || b >= y.n())
        throw DomainError("InvalidOverlap", {{"reason", "index out of range"}});
      if (!xs.insert(a).second || !ys.insert(b).second)
        throw DomainError("InvalidOverlap", {{"reason", "repeated point"}});
    }
  }
  for (size_t a = 0; a < overlap.size(); ++a)
    for (size_t b = a + 1; b < overlap.size(); ++b)
      if (x.d(overlap[a].first, overlap[b].first) != y.d(overlap[a].second, overlap[b].second))
        throw DomainError("OverlapNotIsometric",
                          {{"i", static_cast<int>(a)}, {"j", static_cast<int>(b)}});

  Amalgamated out;
  out.from_x.resize(x.n());
  std::iota(out.from_x.begin(), out.from_x.end(), 0);
  out.from_y.assign(y.n(), -1);
  for (auto [a, b] : overlap) out.from_y[b] = a;

  std::vector<std::string> labels = x.labels;
  std::set<std::string> used(labels.begin(), labels.end());
  std::vector<int> kept;  // y indices outside the overlap
  for (int j = 0; j < y.n(); ++j) {
    if (out.from_y[j] >= 0) continue;
    out.from_y[j] = static_cast<int>(labels.size());
    kept.push_back(j);
    std::string lab = y.labels[j];
    while (!used.insert(lab).second) lab += "'";
    labels.push_back(lab);
  }

  const int total = static_cast<int>(labels.size());
  std::vector<Rat> m(static_cast<size_t>(total) * total, Rat(0));
  auto put = [&](int i, int j, const Rat& v) {
    m[static_cast<size_t>(i) * total + j] = v;
    m[static_cast<size_t>(j) * total + i] = v;
  };
  for (int i = 0; i < x.n(); ++i)
    for (int j = i + 1; j < x.n(); ++j) put(i, j, x.d(i, j));
  for (size_t a = 0; a < kept.size(); ++a)
    for (size_t b = a + 1; b < kept.size(); ++b)
      put(out.from_y[kept[a]], out.from_y[kept[b]], y.d(kept[a], kept[b]));
  for (int i = 0; i < x.n(); ++i)
    for (int jy : kept) {
      Rat best;
      bool first = true;
      for (auto [xz, yz] : overlap) {
        Rat v = std::max(x.d(i, xz), y.d(yz, jy));
        if (first || v < best) {
          best = v;
          first = false;
        }
      }
      put(i, out.from_y[jy], best);
    }

  out.space = make_space(std::move(labels), std::move(m));
  return out;
}

std::vector<Rat> delta(const Morphism& m) {
  std::vector<Rat> d;
  d.reserve(static_cast<size_t>(m.source.n()) * m.target.n());
  for (int i = 0; i < m.source.n(); ++i)
    for (int j = 0; j < m.target.n(); ++j) d.push_back(m.amal.d(m.plus[i], m.minus[j]));
  return d;
}

const Rat& delta_at(const Morphism& m, int x, int y) {
  return m.amal.d(m.plus[x], m.minus[y]);
}

Morphism morphism_from_delta(const UltraSpace& x, const UltraSpace& y, std::vector<Rat> d) {
  const int n = x.n(), k = y.n();
  if (d.size() != static_cast<size_t>(n) * k)
    throw DomainError("InvalidMorphism", {{"reason", "delta shape"}});
  auto D = [&](int i, int j) -> const Rat& { return d[static_cast<size_t>(i) * k + j]; };
  for (const auto& v : d)
    if (v < 0) throw DomainError("InvalidMorphism", {{"reason", "negative delta"}});

  // block pseudometric on X then Y
  const int t = n + k;
  auto B = [&](int i, int j) -> Rat {
    if (i == j) return Rat(0);
    if (i < n && j < n) return x.d(i, j);
    if (i >= n && j >= n) return y.d(i - n, j - n);
    if (i < n) return D(i, j - n);
    return D(j, i - n);
  };
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      for (int l = 0; l < t; ++l)
        if (B(i, l) > std::max(B(i, j), B(j, l)))
          throw DomainError("InvalidMorphism",
                            {{"reason", "delta is not a coset matrix"}, {"i", i}, {"j", j}, {"k", l}});

  // glue zero cross pairs; a source point pairs with at most one target point
  std::vector<int> glue(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j)
      if (D(i, j) == 0) glue[i] = j;

  Morphism m;
  m.source = x;
  m.target = y;
  m.plus.assign(n, -1);
  m.minus.assign(k, -1);
  std::vector<std::vector<int>> xs, ys;
  for (int i = 0; i < n; ++i) {
    if (glue[i] >= 0) continue;
    m.plus[i] = static_cast<int>(xs.size());
    xs.push_back({i});
    ys.push_back({});
  }
  for (int j = 0; j < k; ++j) {
    m.minus[j] = static_cast<int>(xs.size());
    xs.push_back({});
    ys.push_back({j});
  }
  for (int i = 0; i < n; ++i)
    if (glue[i] >= 0) {
      m.plus[i] = m.minus[glue[i]];
      xs[m.plus[i]].push_back(i);
    }

  const int np = static_cast<int>(xs.size());
  std::vector<std::string> labels(np);
  for (int p = 0; p < np; ++p) labels[p] = role_label(x.labels, y.labels, xs[p], ys[p]);
  std::vector<Rat> pm(static_cast<size_t>(np) * np, Rat(0));
  auto rep = [&](int p) { return xs[p].empty() ? n + ys[p][0] : xs[p][0]; };
  for (int a = 0; a < np; ++a)
    for (int b = a + 1; b < np; ++b) {
      Rat v = B(rep(a), rep(b));
      pm[static_cast<size_t>(a) * np + b] = v;
      pm[static_cast<size_t>(b) * np + a] = v;
    }
  m.amal = make_space(std::move(labels), std::move(pm));
  return m;
}

namespace {

Morphism restrict_amalgam(const UltraSpace& big, const UltraSpace& src, const UltraSpace& dst,
                          const std::vector<int>& plus_big, const std::vector<int>& minus_big) {
  std::vector<int> keep;
  for (int v : plus_big) keep.push_back(v);
  for (int v : minus_big) keep.push_back(v);
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::map<int, int> pos;
  for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);

  Morphism m;
  m.source = src;
  m.target = dst;
  for (int v : plus_big) m.plus.push_back(pos[v]);
  for (int v : minus_big) m.minus.push_back(pos[v]);

  const int np = static_cast<int>(keep.size());
  std::vector<std::vector<int>> xs(np), ys(np);
  for (int i = 0; i < src.n(); ++i) xs[m.plus[i]].push_back(i);
  for (int j = 0; j < dst.n(); ++j) ys[m.minus[j]].push_back(j);
  std::vector<std::string> labels(np);
  for (int p = 0; p < np; ++p) labels[p] = role_label(src.labels, dst.labels, xs[p], ys[p]);
  std::vector<Rat> pm(static_cast<size_t>(np) * np, Rat(0));
  for (int a = 0; a < np; ++a)
    for (int b = a + 1; b < np; ++b) {
      Rat v = big.d(keep[a], keep[b]);
      pm[static_cast<size_t>(a) * np + b] = v;
      pm[static_cast<size_t>(b) * np + a] = v;
    }
  m.amal = make_space(std::move(labels), std::move(pm));
  return m;
}

}  // namespace

Morphism compose(const Morphism& p, const Morphism& q) {
  if (!same_labeled_space(p.target, q.source)) throw DomainError("TargetSourceMismatch");
  std::vector<std::pair<int, int>> overlap;
  for (int y = 0; y < p.target.n(); ++y) overlap.push_back({p.minus[y], q.plus[y]});
  Amalgamated am = amalgamate(p.amal, q.amal, overlap);
  std::vector<int> plus_big, minus_big;
  for (int i = 0; i < p.source.n(); ++i) plus_big.push_back(am.from_x[p.plus[i]]);
  for (int j = 0; j < q.target.n(); ++j) minus_big.push_back(am.from_y[q.minus[j]]);
  return restrict_amalgam(am.space, p.source, q.target, plus_big, minus_big);
}

std::vector<Rat> delta_minmax(const Morphism& p, const Morphism& q) {
  const int n = p.source.n(), mid = p.target.n(), k = q.target.n();
  std::vector<Rat> out(static_cast<size_t>(n) * k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      Rat best;
      bool first = true;
      for (int y = 0; y < mid; ++y) {
        Rat v = std::max(delta_at(p, i, y), delta_at(q, y, j));
        if (first || v < best) {
          best = v;
          first = false;
        }
      }
      out[static_cast<size_t>(i) * k + j] = best;
    }
  return out;
}

Morphism compose_via_delta(const Morphism& p, const Morphism& q) {
  if (!same_labeled_space(p.target, q.source)) throw DomainError("TargetSourceMismatch");
  return morphism_from_delta(p.source, q.target, delta_minmax(p, q));
}

Morphism involution(const Morphism& p) {
  Morphism m;
  m.source = p.target;
  m.target = p.source;
  m.plus = p.minus;
  m.minus = p.plus;
  // re-tag amalgam labels so dumps read left to right
  const int np = p.amal.n();
  std::vector<std::vector<int>> xs(np), ys(np);
  for (int i = 0; i < m.source.n(); ++i) xs[m.plus[i]].push_back(i);
  for (int j = 0; j < m.target.n(); ++j) ys[m.minus[j]].push_back(j);
  m.amal = p.amal;
  for (int v = 0; v < np; ++v)
    m.amal.labels[v] = role_label(m.source.labels, m.target.labels, xs[v], ys[v]);
  return m;
}

std::string canonical_key(const Morphism& m) {
  std::vector<std::string> payload(m.amal.n());
  for (int v = 0; v < m.amal.n(); ++v) {
    std::string s = "p";
    for (int i = 0; i < m.source.n(); ++i)
      if (m.plus[i] == v) s += std::to_string(i) + ",";
    s += "m";
    for (int j = 0; j < m.target.n(); ++j)
      if (m.minus[j] == v) s += std::to_string(j) + ",";
    payload[v] = s;
  }
  return canonical_code_decorated(m.amal, payload);
}

bool morphism_eq(const Morphism& a, const Morphism& b) {
  return same_labeled_space(a.source, b.source) && same_labeled_space(a.target, b.target) &&
         delta(a) == delta(b);
}

Morphism morphism_from_configuration(const std::vector<NguyenPoint>& x_pts,
                                     const std::vector<NguyenPoint>& y_pts,
                                     const std::vector<NguyenPoint>& gx_pts,
                                     const std::vector<std::string>& x_labels,
                                     const std::vector<std::string>& y_labels) {
  if (x_pts.size() != gx_pts.size()) throw DomainError("NotIsometric", {{"reason", "size"}});
  for (size_t i = 0; i < x_pts.size(); ++i)
    for (size_t j = i + 1; j < x_pts.size(); ++j)
      if (model_distance(x_pts[i], x_pts[j]) != model_distance(gx_pts[i], gx_pts[j]))
        throw DomainError("NotIsometric",
                          {{"i", static_cast<int>(i)}, {"j", static_cast<int>(j)}});

  UltraSpace x = induced_space(x_labels, x_pts);
  UltraSpace y = induced_space(y_labels, y_pts);
  std::vector<Rat> d(static_cast<size_t>(x.n()) * y.n());
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < y.n(); ++j)
      d[static_cast<size_t>(i) * y.n() + j] = model_distance(gx_pts[i], y_pts[j]);
  return morphism_from_delta(x, y, std::move(d));
}

void validate_partial_iso(const PartialTreeIso& f) {
  if (f.gens.empty()) throw DomainError("InvalidPartialIso", {{"reason", "no generators"}});
  for (const auto& [a, b] : f.gens) {
    if (a.height != b.height)
      throw DomainError("InvalidPartialIso", {{"reason", "height not preserved"}});
    if (a.height < 0 || a.base < 0 || a.base >= f.src.n() || b.base < 0 || b.base >= f.dst.n())
      throw DomainError("InvalidPartialIso", {{"reason", "bad tree point"}});
  }
  for (size_t i = 0; i < f.gens.size(); ++i)
    for (size_t j = i + 1; j < f.gens.size(); ++j) {
      const auto& [ai, bi] = f.gens[i];
      const auto& [aj, bj] = f.gens[j];
      Rat m = std::max(ai.height, aj.height);
      if (std::max(m, f.src.d(ai.base, aj.base)) != std::max(m, f.dst.d(bi.base, bj.base)))
        throw DomainError("InvalidPartialIso",
                          {{"reason", "join heights differ"},
                           {"i", static_cast<int>(i)},
                           {"j", static_cast<int>(j)}});
    }
}

PartialTreeIso to_partial_iso(const Morphism& m) {
  PartialTreeIso f;
  f.src = m.source;
  f.dst = m.target;
  for (int i = 0; i < m.source.n(); ++i) {
    int best = 0;
    for (int j = 1; j < m.target.n(); ++j)
      if (delta_at(m, i, j) < delta_at(m, i, best)) best = j;
    Rat r = delta_at(m, i, best);
    f.gens.push_back({TreePoint{i, r}, TreePoint{best, r}});
  }
  return f;
}

Morphism from_partial_iso(const PartialTreeIso& f) {
  validate_partial_iso(f);
  const int n = f.src.n(), k = f.dst.n();
  std::vector<Rat> d(static_cast<size_t>(n) * k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      Rat best;
      bool first = true;
      for (const auto& [a, b] : f.gens) {
        Rat v = std::max(a.height, std::max(f.src.d(i, a.base), f.dst.d(j, b.base)));
        if (first || v < best) {
          best = v;
          first = false;
        }
      }
      d[static_cast<size_t>(i) * k + j] = best;
    }
  return morphism_from_delta(f.src, f.dst, std::move(d));
}

PartialTreeIso compose_partial(const PartialTreeIso& psi, const PartialTreeIso& phi) {
  if (!same_labeled_space(phi.dst, psi.src)) throw DomainError("TreeMismatch");
  PartialTreeIso out;
  out.src = phi.src;
  out.dst = psi.dst;
  for (const auto& [a, b] : phi.gens) {
    // entry height of the ray over b into dom psi
    Rat h;
    size_t best = 0;
    bool first = true;
    for (size_t j = 0; j < psi.gens.size(); ++j) {
      const auto& [c, e] = psi.gens[j];
      Rat v = std::max(std::max(a.height, c.height), psi.src.d(b.base, c.base));
      if (first || v < h) {
        h = v;
        best = j;
        first = false;
      }
    }
    out.gens.push_back({TreePoint{a.base, h}, TreePoint{psi.gens[best].second.base, h}});
  }
  return out;
}

std::vector<std::pair<TreePoint, TreePoint>> canonical_gens(const PartialTreeIso& f) {
  auto gens = to_partial_iso(from_partial_iso(f)).gens;
  // drop generators naming an already covered tree point pair
  std::vector<std::pair<TreePoint, TreePoint>> out;
  for (const auto& g : gens) {
    bool dup = false;
    for (const auto& h : out)
      if (tree_point_eq(f.src, g.first, h.first) && tree_point_eq(f.dst, g.second, h.second))
        dup = true;
    if (!dup) out.push_back(g);
  }
  return out;
}

bool partial_iso_eq(const PartialTreeIso& a, const PartialTreeIso& b) {
  if (!same_labeled_space(a.src, b.src) || !same_labeled_space(a.dst, b.dst)) return false;
  return morphism_eq(from_partial_iso(a), from_partial_iso(b));
}

}  // namespace ultracat
