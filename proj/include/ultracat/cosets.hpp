#pragma once

#include "ultracat/amalgam.hpp"
#include "ultracat/urysohn.hpp"

#include <string>
#include <vector>

namespace ultracat {

// Coset matrix of a partial map between configurations in the model: sources X,
// targets Z, and the images gX of X under some isometry. Empty label lists get
// defaults x1.., z1...
Morphism double_coset(const std::vector<NguyenPoint>& x_pts,
                      const std::vector<NguyenPoint>& z_pts,
                      const std::vector<NguyenPoint>& gx_pts,
                      std::vector<std::string> x_labels = {},
                      std::vector<std::string> z_labels = {});

struct StabilizationResult {
  long long J = 0;  // first index from which the coset sequence sits at its limit
  Morphism limit;
};

// Tracks double_coset(X, Z, g1 . Theta_j^Y . g2) for j = 1..j_max and checks the
// tail against compose(double_coset(X,Y,g2), double_coset(Y,Z,g1)). Throws
// NoStabilizationWithinBound when the last index still disagrees.
StabilizationResult theta_stabilization(const std::vector<NguyenPoint>& x_pts,
                                        const std::vector<NguyenPoint>& y_pts,
                                        const std::vector<NguyenPoint>& z_pts,
                                        const ModelIsometry& g1, const ModelIsometry& g2,
                                        long long j_max,
                                        std::vector<std::string> x_labels = {},
                                        std::vector<std::string> y_labels = {},
                                        std::vector<std::string> z_labels = {});

std::vector<std::string> default_labels(char prefix, size_t n);

}  // namespace ultracat
