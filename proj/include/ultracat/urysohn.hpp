#pragma once

#include "ultracat/lambda.hpp"
#include "ultracat/rat.hpp"
#include "ultracat/space.hpp"

#include <map>
#include <variant>
#include <vector>

namespace ultracat {

// Point of the countable model: finitely supported function from spectrum
// values to integers (absent key = 0). Distance between two points is the
// largest value where they differ.
struct NguyenPoint {
  std::map<Rat, long long> support;  // values are nonzero

  long long at(const Rat& lam) const {
    auto it = support.find(lam);
    return it == support.end() ? 0 : it->second;
  }
  void set(const Rat& lam, long long v) {
    if (v == 0)
      support.erase(lam);
    else
      support[lam] = v;
  }
};

bool operator==(const NguyenPoint& a, const NguyenPoint& b);
bool operator<(const NguyenPoint& a, const NguyenPoint& b);  // deterministic order

Rat model_distance(const NguyenPoint& a, const NguyenPoint& b);

// Ball in the model: its restriction data above (closed) or at-and-above
// (open) the radius.
struct ModelBall {
  BallKind kind = BallKind::closed;
  Rat radius;
  std::map<Rat, long long> nu;  // keys > radius (closed) or >= radius (open); zero values dropped
};

ModelBall ball_of(const NguyenPoint& w, BallKind kind, const Rat& r);
bool ball_contains(const ModelBall& b, const NguyenPoint& w);
bool operator==(const ModelBall& a, const ModelBall& b);
bool operator<(const ModelBall& a, const ModelBall& b);

// The minimal point of a ball: zero everywhere the ball does not constrain.
NguyenPoint ball_witness(const ModelBall& b);

// Canonical isometry between two balls of the same kind and radius: splice
// the low part of w onto the target's high data.
NguyenPoint shift(const ModelBall& b1, const ModelBall& b2, const NguyenPoint& w);

// Next point of an isometric copy: distances[i] prescribes d(theta, pts[i]).
// The new point copies the nearest existing point above level s = min
// distance and takes the smallest positive unused integer at s.
NguyenPoint urysohn_extend(const LambdaSpec& lambda, const std::vector<NguyenPoint>& pts,
                           const std::vector<Rat>& distances);

// Isometric copy of a whole space, one urysohn_extend per point in label order.
std::vector<NguyenPoint> embed_space(const UltraSpace& s, const LambdaSpec& lambda);

// Pairwise model distances as an UltraSpace (points must be distinct).
UltraSpace induced_space(const std::vector<std::string>& labels,
                         const std::vector<NguyenPoint>& pts);

// count points pairwise at distance lam, all agreeing with x away from lam.
std::vector<NguyenPoint> witnesses_at(const NguyenPoint& x, const Rat& lam, int count);

// Translation by j of the free branch indices over the configuration Y;
// fixes Y pointwise, acts on each complementary branch by the pinned
// rank-order re-indexing at its entry height.
NguyenPoint theta_apply(const std::vector<NguyenPoint>& y, long long j, const NguyenPoint& w);

// Isometries of the model presentable at desk scale: compositions of theta
// translations, germ transpositions (two open balls at radius equal to their
// mutual distance), and finite point maps (which fail with InsufficientData
// off their support).
struct ThetaMove {
  std::vector<NguyenPoint> y;
  long long j = 1;
};
struct SwapMove {
  ModelBall b1, b2;
};
struct MapMove {
  std::vector<std::pair<NguyenPoint, NguyenPoint>> pairs;
};
using IsoMove = std::variant<ThetaMove, SwapMove, MapMove>;
using ModelIsometry = std::vector<IsoMove>;

NguyenPoint apply_isometry(const ModelIsometry& g, const NguyenPoint& w);
std::vector<NguyenPoint> apply_isometry(const ModelIsometry& g,
                                        const std::vector<NguyenPoint>& ws);

}  // namespace ultracat
