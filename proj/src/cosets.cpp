#include "ultracat/cosets.hpp"

#include "ultracat/error.hpp"

namespace ultracat {

std::vector<std::string> default_labels(char prefix, size_t n) {
  std::vector<std::string> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = std::string(1, prefix) + std::to_string(i + 1);
  return out;
}

Morphism double_coset(const std::vector<NguyenPoint>& x_pts,
                      const std::vector<NguyenPoint>& z_pts,
                      const std::vector<NguyenPoint>& gx_pts, std::vector<std::string> x_labels,
                      std::vector<std::string> z_labels) {
  if (x_labels.empty()) x_labels = default_labels('x', x_pts.size());
  if (z_labels.empty()) z_labels = default_labels('z', z_pts.size());
  return morphism_from_configuration(x_pts, z_pts, gx_pts, x_labels, z_labels);
}

StabilizationResult theta_stabilization(const std::vector<NguyenPoint>& x_pts,
                                        const std::vector<NguyenPoint>& y_pts,
                                        const std::vector<NguyenPoint>& z_pts,
                                        const ModelIsometry& g1, const ModelIsometry& g2,
                                        long long j_max, std::vector<std::string> x_labels,
                                        std::vector<std::string> y_labels,
                                        std::vector<std::string> z_labels) {
  if (j_max < 1) throw DomainError("NoStabilizationWithinBound", {{"j_max", j_max}});
  if (x_labels.empty()) x_labels = default_labels('x', x_pts.size());
  if (y_labels.empty()) y_labels = default_labels('y', y_pts.size());
  if (z_labels.empty()) z_labels = default_labels('z', z_pts.size());

  std::vector<NguyenPoint> g2x = apply_isometry(g2, x_pts);
  std::vector<NguyenPoint> g1y = apply_isometry(g1, y_pts);
  Morphism left = double_coset(x_pts, y_pts, g2x, x_labels, y_labels);
  Morphism right = double_coset(y_pts, z_pts, g1y, y_labels, z_labels);
  Morphism limit = compose(left, right);

  long long last_bad = 0;
  for (long long j = 1; j <= j_max; ++j) {
    std::vector<NguyenPoint> moved;
    moved.reserve(g2x.size());
    for (const auto& p : g2x) moved.push_back(theta_apply(y_pts, j, p));
    moved = apply_isometry(g1, moved);
    Morphism dc = double_coset(x_pts, z_pts, moved, x_labels, z_labels);
    if (!morphism_eq(dc, limit)) last_bad = j;
  }
  if (last_bad == j_max)
    throw DomainError("NoStabilizationWithinBound", {{"j_max", j_max}});
  return {last_bad + 1, std::move(limit)};
}

}  // namespace ultracat
