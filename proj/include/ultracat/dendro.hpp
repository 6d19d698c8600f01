#pragma once

#include "ultracat/space.hpp"

#include <string>
#include <vector>

namespace ultracat {

// Merge tree of a finite ultrametric space. Only actual branch points
// (>= 2 children) and leaves are materialized; ideal balls at intermediate
// heights live on edges and are handled through TreePoint.
struct DendroNode {
  Rat height;
  std::vector<int> members;   // ascending point indices
  std::vector<int> children;  // node ids, ordered by least member
  int parent = -1;
};

struct Dendrogram {
  std::vector<DendroNode> nodes;
  int root = -1;
  std::vector<int> leaf_of_point;

  const DendroNode& at(int id) const { return nodes[id]; }
  bool is_leaf(int id) const { return nodes[id].children.empty(); }
};

Dendrogram build_tree(const UltraSpace& s);

// Ideal ball beta(x, r): every x and every r >= 0 names a point of the tree,
// including heights above the root.
struct TreePoint {
  int base;
  Rat height;
};

bool tree_point_eq(const UltraSpace& s, const TreePoint& p, const TreePoint& q);

// Join of the two ascending rays; base point inherited from p.
TreePoint highest_point(const UltraSpace& s, const TreePoint& p, const TreePoint& q);

// Path length in the tree; restricted to leaves this is the original metric.
Rat tree_distance(const UltraSpace& s, const TreePoint& p, const TreePoint& q);

// Child directions at an internal node. Throws LeafHasNoDownGerms on a leaf.
const std::vector<int>& germs_down(const Dendrogram& t, int node);

// Deepest materialized node v with members(v) = closed ball around x of radius r.
int node_of_ball(const Dendrogram& t, int x, const Rat& r);

// Canonical string code: equal codes iff the spaces are isometric.
std::string canonical_code(const UltraSpace& s);

// Same with a per-point decoration participating in the sort, so equality
// means decorated isometry.
std::string canonical_code_decorated(const UltraSpace& s, const std::vector<std::string>& payload);

// All distance-preserving bijections s1 -> s2 as image lists (empty when the
// spaces are not isometric); isometry_group(s) = isometries_between(s, s).
std::vector<std::vector<int>> isometries_between(const UltraSpace& s1, const UltraSpace& s2);
std::vector<std::vector<int>> isometry_group(const UltraSpace& s);

std::string dendrogram_text(const UltraSpace& s, const Dendrogram& t);

}  // namespace ultracat
