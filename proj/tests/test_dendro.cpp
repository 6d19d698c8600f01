#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "ultracat/dendro.hpp"
#include "ultracat/error.hpp"

#include <algorithm>
#include <random>

using namespace ultracat;
using testutil::tri122;

namespace {

std::vector<std::vector<int>> brute_isometries(const UltraSpace& a, const UltraSpace& b) {
  std::vector<std::vector<int>> out;
  if (a.n() != b.n()) return out;
  std::vector<int> perm(a.n());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < a.n() && ok; ++i)
      for (int j = i + 1; j < a.n() && ok; ++j)
        if (a.d(i, j) != b.d(perm[i], perm[j])) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

UltraSpace permuted_copy(const UltraSpace& s, const std::vector<int>& perm,
                         const std::string& prefix) {
  // point i of the copy is point perm[i] of s
  const int n = s.n();
  std::vector<Rat> m(static_cast<size_t>(n) * n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * n + j] = s.d(perm[i], perm[j]);
  return make_space(testutil::labels_n(n, prefix), std::move(m));
}

}  // namespace

TEST_CASE("single point tree is one leaf at height zero") {
  auto s = make_space({"a"}, {Rat(0)});
  auto t = build_tree(s);
  REQUIRE(t.nodes.size() == 1);
  CHECK(t.root == 0);
  CHECK(t.at(0).height == 0);
  CHECK(t.is_leaf(0));
}

TEST_CASE("tree of the 1,2,2 triangle") {
  auto s = tri122();
  auto t = build_tree(s);
  REQUIRE(t.nodes.size() == 5);  // 3 leaves, {a,b}, root
  const auto& root = t.at(t.root);
  CHECK(root.height == 2);
  CHECK(root.members == std::vector<int>{0, 1, 2});
  REQUIRE(root.children.size() == 2);
  const auto& ab = t.at(root.children[0]);
  CHECK(ab.height == 1);
  CHECK(ab.members == std::vector<int>{0, 1});
  CHECK(t.at(root.children[1]).members == std::vector<int>{2});
  for (int p = 0; p < 3; ++p) CHECK(t.at(t.leaf_of_point[p]).height == 0);
}

TEST_CASE("equilateral triangle tree has one branch node") {
  auto t = build_tree(testutil::equilateral(3, Rat(1)));
  REQUIRE(t.nodes.size() == 4);
  CHECK(t.at(t.root).height == 1);
  CHECK(t.at(t.root).children.size() == 3);
}

TEST_CASE("tree point equality matches ball coincidence") {
  auto s = tri122();
  CHECK(tree_point_eq(s, {0, Rat(1)}, {1, Rat(1)}));   // d(a,b)=1 <= 1
  CHECK(!tree_point_eq(s, {0, Rat(1)}, {2, Rat(1)}));  // d(a,c)=2 > 1
  CHECK(tree_point_eq(s, {0, Rat(2)}, {2, Rat(2)}));
  CHECK(!tree_point_eq(s, {0, Rat(0)}, {0, Rat(1)}));
}

TEST_CASE("vertical distance is half the height difference") {
  auto s = tri122();
  CHECK(tree_distance(s, {0, Rat(0)}, {0, Rat(2)}) == 1);
  CHECK(tree_distance(s, {0, Rat(0)}, {2, Rat(0)}) == 2);
  CHECK(tree_distance(s, {1, Rat(1)}, {1, Rat(1)}) == 0);
}

TEST_CASE("leaf distances recover the metric") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 40; ++it) {
    auto s = testutil::rand_space(rng, 2 + static_cast<int>(rng() % 7),
                                  {Rat(1), Rat(2), Rat(3), rat(7, 2)});
    for (int i = 0; i < s.n(); ++i)
      for (int j = 0; j < s.n(); ++j)
        CHECK(tree_distance(s, {i, Rat(0)}, {j, Rat(0)}) == s.d(i, j));
  }
}

TEST_CASE("join point and path length relation") {
  std::mt19937_64 rng(22);
  for (int it = 0; it < 40; ++it) {
    auto s = testutil::rand_space(rng, 5, {Rat(1), Rat(2), Rat(4)});
    for (int i = 0; i < s.n(); ++i)
      for (int j = 0; j < s.n(); ++j) {
        TreePoint p{i, Rat(static_cast<int>(rng() % 3))};
        TreePoint q{j, Rat(static_cast<int>(rng() % 3))};
        auto h = highest_point(s, p, q);
        CHECK(h.height == std::max({p.height, q.height, s.d(i, j)}));
        // the join dominates both
        CHECK(tree_point_eq(s, h, highest_point(s, q, p)));
        Rat expect = ((h.height - p.height) + (h.height - q.height)) / 2;
        CHECK(tree_distance(s, p, q) == expect);
      }
  }
}

TEST_CASE("join of two leaves sits at their distance") {
  auto s = tri122();
  auto h = highest_point(s, {0, Rat(0)}, {1, Rat(0)});
  CHECK(h.height == 1);
  auto r = highest_point(s, {0, Rat(0)}, {2, Rat(0)});
  CHECK(r.height == 2);
  // a point above another joins at the higher one
  auto p = highest_point(s, {0, Rat(2)}, {0, Rat(0)});
  CHECK(p.height == 2);
}

TEST_CASE("down germs count children") {
  auto s = tri122();
  auto t = build_tree(s);
  CHECK(germs_down(t, t.root).size() == 2);
  int ab = node_of_ball(t, 0, Rat(1));
  CHECK(germs_down(t, ab).size() == 2);
  CHECK_THROWS_WITH_AS(germs_down(t, t.leaf_of_point[0]), doctest::Contains("LeafHasNoDownGerms"),
                       DomainError);
  auto e = testutil::equilateral(3, Rat(1));
  auto te = build_tree(e);
  CHECK(germs_down(te, te.root).size() == 3);
}

TEST_CASE("node_of_ball finds the deepest node covering the ball") {
  auto s = tri122();
  auto t = build_tree(s);
  CHECK(t.at(node_of_ball(t, 0, Rat(0))).members == std::vector<int>{0});
  CHECK(t.at(node_of_ball(t, 0, Rat(1))).members == (std::vector<int>{0, 1}));
  CHECK(node_of_ball(t, 0, Rat(2)) == t.root);
  CHECK(t.at(node_of_ball(t, 2, Rat(1))).members == std::vector<int>{2});
}

TEST_CASE("canonical code ignores labeling") {
  auto s = tri122();
  auto relabeled = permuted_copy(s, {2, 0, 1}, "q");
  CHECK(canonical_code(s) == canonical_code(relabeled));
  CHECK(canonical_code(s) != canonical_code(testutil::equilateral(3, Rat(1))));
  auto one = make_space({"z"}, {Rat(0)});
  CHECK(canonical_code(one) == canonical_code(make_space({"w"}, {Rat(0)})));
}

TEST_CASE("canonical code equality matches brute-force isometry on random pairs") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    int n = 2 + static_cast<int>(rng() % 5);
    auto a = testutil::rand_space(rng, n, {Rat(1), Rat(2), Rat(3)});
    auto b = testutil::rand_space(rng, n, {Rat(1), Rat(2), Rat(3)}, "q");
    bool same_code = canonical_code(a) == canonical_code(b);
    bool iso = !brute_isometries(a, b).empty();
    CHECK(same_code == iso);
  }
}

TEST_CASE("isometry group sizes on fixtures") {
  CHECK(isometry_group(tri122()).size() == 2);
  CHECK(isometry_group(testutil::equilateral(3, Rat(1))).size() == 6);
  CHECK(isometry_group(make_space({"a"}, {Rat(0)})).size() == 1);
}

TEST_CASE("isometry group equals brute force on random spaces") {
  std::mt19937_64 rng(24);
  for (int it = 0; it < 30; ++it) {
    int n = 2 + static_cast<int>(rng() % 6);
    auto s = testutil::rand_space(rng, n, {Rat(1), Rat(2), Rat(3)});
    auto fast = isometry_group(s);
    auto slow = brute_isometries(s, s);
    std::sort(fast.begin(), fast.end());
    std::sort(slow.begin(), slow.end());
    CHECK(fast == slow);
  }
}

TEST_CASE("isometries_between matches brute force across distinct spaces") {
  std::mt19937_64 rng(25);
  for (int it = 0; it < 30; ++it) {
    int n = 2 + static_cast<int>(rng() % 5);
    auto a = testutil::rand_space(rng, n, {Rat(1), Rat(2)});
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto b = permuted_copy(a, perm, "q");
    auto fast = isometries_between(a, b);
    auto slow = brute_isometries(a, b);
    std::sort(fast.begin(), fast.end());
    std::sort(slow.begin(), slow.end());
    CHECK(fast == slow);
    CHECK(!fast.empty());
    for (const auto& f : fast)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(a.d(i, j) == b.d(f[i], f[j]));
  }
}

TEST_CASE("non-isometric spaces have no isometries between them") {
  CHECK(isometries_between(tri122(), testutil::equilateral(3, Rat(1))).empty());
}

TEST_CASE("text rendering mentions every label") {
  auto s = tri122();
  auto txt = dendrogram_text(s, build_tree(s));
  for (const auto& l : s.labels) CHECK(txt.find(l) != std::string::npos);
}
