#pragma once

#include "ultracat/space.hpp"

#include <vector>

namespace ultracat {

enum class MetricMode { original, squared };

// Euclidean realization of the merge tree: one orthogonal axis per tree
// edge, axis j carrying squared length axis_weights[j].  A point's vector
// has coefficient 1 exactly on the edges of its leaf-to-root path, so
// squared distances are exact rational sums of edge weights.
struct EmbeddingResult {
  std::vector<Rat> axis_weights;
  std::vector<std::vector<Rat>> coordinates;  // per point, 0/1 per axis
  std::vector<Rat> sq_dist;                   // realized squared distances, row-major
  int dim = 0;
};

// In squared mode the tree of the squared metric is embedded, so Euclidean
// distance equals the original ultrametric distance.
EmbeddingResult tree_embedding(const UltraSpace& x, MetricMode mode);

// Exact inner product <psi_x - psi_y, psi_z - psi_w> in the weighted axes.
Rat embedding_dot(const EmbeddingResult& e, int x, int y, int z, int w);

// Kernel matrix with entries s^d(x,y); kept exact when every distance is an
// integer, floating otherwise.
struct GramMatrix {
  int n = 0;
  bool exact = false;
  std::vector<Rat> rat;     // filled when exact
  std::vector<double> num;  // always filled
};

GramMatrix schoenberg_gram(const UltraSpace& x, const Rat& s);

// Positive semidefiniteness certificate: elimination pivots when exact,
// otherwise the smallest eigenvalue against the spectral scale.
struct PsdCertificate {
  bool psd = false;
  bool exact = false;
  std::vector<Rat> pivots;  // in elimination order; stops at a failure
  double min_eig = 0.0;
  double scale = 0.0;  // largest absolute eigenvalue
};

PsdCertificate psd_check(const GramMatrix& g);

}  // namespace ultracat
