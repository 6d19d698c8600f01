#include "ultracat/dendro.hpp"

#include "ultracat/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace ultracat {

namespace {

int build_rec(const UltraSpace& s, std::vector<int> pts, Dendrogram& t) {
  if (pts.size() == 1) {
    t.nodes.push_back({Rat(0), pts, {}, -1});
    const int id = static_cast<int>(t.nodes.size()) - 1;
    t.leaf_of_point[pts[0]] = id;
    return id;
  }
  Rat h(0);
  for (size_t a = 0; a < pts.size(); ++a)
    for (size_t b = a + 1; b < pts.size(); ++b) h = std::max(h, s.d(pts[a], pts[b]));
  // children = blocks of d < h within pts
  std::vector<int> block(pts.size(), -1);
  std::vector<std::vector<int>> blocks;
  for (size_t a = 0; a < pts.size(); ++a) {
    if (block[a] >= 0) continue;
    blocks.emplace_back();
    const int b = static_cast<int>(blocks.size()) - 1;
    for (size_t c = a; c < pts.size(); ++c)
      if (block[c] < 0 && s.d(pts[a], pts[c]) < h) {
        block[c] = b;
        blocks[b].push_back(pts[c]);
      }
  }
  std::vector<int> kids;
  for (auto& bl : blocks) kids.push_back(build_rec(s, std::move(bl), t));
  t.nodes.push_back({h, pts, kids, -1});
  const int id = static_cast<int>(t.nodes.size()) - 1;
  for (int k : kids) t.nodes[k].parent = id;
  return id;
}

}  // namespace

Dendrogram build_tree(const UltraSpace& s) {
  Dendrogram t;
  t.leaf_of_point.assign(s.n(), -1);
  std::vector<int> all(s.n());
  for (int i = 0; i < s.n(); ++i) all[i] = i;
  t.root = build_rec(s, std::move(all), t);
  return t;
}

bool tree_point_eq(const UltraSpace& s, const TreePoint& p, const TreePoint& q) {
  return p.height == q.height && s.d(p.base, q.base) <= p.height;
}

TreePoint highest_point(const UltraSpace& s, const TreePoint& p, const TreePoint& q) {
  Rat h = std::max(std::max(p.height, q.height), s.d(p.base, q.base));
  return TreePoint{p.base, h};
}

Rat tree_distance(const UltraSpace& s, const TreePoint& p, const TreePoint& q) {
  Rat h = std::max(std::max(p.height, q.height), s.d(p.base, q.base));
  return ((h - p.height) + (h - q.height)) / 2;
}

const std::vector<int>& germs_down(const Dendrogram& t, int node) {
  if (t.is_leaf(node)) throw DomainError("LeafHasNoDownGerms", {{"node", node}});
  return t.at(node).children;
}

int node_of_ball(const Dendrogram& t, int x, const Rat& r) {
  int v = t.leaf_of_point[x];
  while (t.at(v).parent >= 0 && t.at(t.at(v).parent).height <= r) v = t.at(v).parent;
  return v;
}

namespace {

std::string code_rec(const UltraSpace& s, const Dendrogram& t, int node,
                     const std::vector<std::string>* payload) {
  const auto& nd = t.at(node);
  std::string out = "(" + rat_str(nd.height);
  if (nd.children.empty()) {
    if (payload) out += ":" + (*payload)[nd.members[0]];
  } else {
    std::vector<std::string> kids;
    for (int c : nd.children) kids.push_back(code_rec(s, t, c, payload));
    std::sort(kids.begin(), kids.end());
    for (auto& k : kids) out += k;
  }
  out += ")";
  return out;
}

}  // namespace

std::string canonical_code(const UltraSpace& s) {
  Dendrogram t = build_tree(s);
  return code_rec(s, t, t.root, nullptr);
}

std::string canonical_code_decorated(const UltraSpace& s,
                                     const std::vector<std::string>& payload) {
  Dendrogram t = build_tree(s);
  return code_rec(s, t, t.root, &payload);
}

namespace {

// all height preserving tree isomorphisms node a (in t1) -> node b (in t2),
// emitted as point image maps into `out` through the partial assignment `acc`
struct IsoEnum {
  const UltraSpace *s1, *s2;
  const Dendrogram *t1, *t2;
  std::vector<std::string> code1, code2;
  std::vector<std::vector<int>>* out;
  std::vector<int> acc;

  void leaves(int a, int b, std::function<void()> k) {
    acc[t1->at(a).members[0]] = t2->at(b).members[0];
    k();
  }

  void match(int a, int b, std::function<void()> k) {
    if (code1[a] != code2[b]) return;
    if (t1->is_leaf(a)) {
      leaves(a, b, k);
      return;
    }
    const auto& ca = t1->at(a).children;
    const auto& cb = t2->at(b).children;
    // assign children of a to distinct code-equal children of b
    std::vector<int> used(cb.size(), 0);
    std::function<void(size_t)> go = [&](size_t i) {
      if (i == ca.size()) {
        k();
        return;
      }
      for (size_t j = 0; j < cb.size(); ++j) {
        if (used[j] || code1[ca[i]] != code2[cb[j]]) continue;
        used[j] = 1;
        match(ca[i], cb[j], [&] { go(i + 1); });
        used[j] = 0;
      }
    };
    go(0);
  }
};

}  // namespace

std::vector<std::vector<int>> isometries_between(const UltraSpace& s1, const UltraSpace& s2) {
  std::vector<std::vector<int>> out;
  if (s1.n() != s2.n()) return out;
  Dendrogram t1 = build_tree(s1), t2 = build_tree(s2);
  IsoEnum e;
  e.s1 = &s1;
  e.s2 = &s2;
  e.t1 = &t1;
  e.t2 = &t2;
  e.code1.resize(t1.nodes.size());
  e.code2.resize(t2.nodes.size());
  for (size_t i = 0; i < t1.nodes.size(); ++i)
    e.code1[i] = code_rec(s1, t1, static_cast<int>(i), nullptr);
  for (size_t i = 0; i < t2.nodes.size(); ++i)
    e.code2[i] = code_rec(s2, t2, static_cast<int>(i), nullptr);
  e.out = &out;
  e.acc.assign(s1.n(), -1);
  e.match(t1.root, t2.root, [&] { out.push_back(e.acc); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> isometry_group(const UltraSpace& s) {
  return isometries_between(s, s);
}

std::string dendrogram_text(const UltraSpace& s, const Dendrogram& t) {
  std::ostringstream os;
  std::function<void(int, int)> walk = [&](int node, int depth) {
    const auto& nd = t.at(node);
    for (int i = 0; i < depth; ++i) os << "  ";
    if (nd.children.empty()) {
      os << s.labels[nd.members[0]] << "\n";
      return;
    }
    os << "+ h=" << rat_str(nd.height) << "\n";
    for (int c : nd.children) walk(c, depth + 1);
  };
  walk(t.root, 0);
  return os.str();
}

}  // namespace ultracat
