#pragma once

#include "ultracat/space.hpp"

#include <vector>

namespace ultracat {

// Ball of the ambient model, anchored in a finite configuration: the set of
// configuration points at distance <= radius (closed) or < radius (open)
// from the center.  The radius carries ambient meaning beyond the
// configuration, so balls with equal point sets and different radii are
// different objects.  Canonical form centers at the least member.
struct FiniteBall {
  BallKind kind = BallKind::closed;
  int center = 0;
  ExtRat radius{Rat(0)};
};

bool operator==(const FiniteBall& a, const FiniteBall& b);
// ascending by radius, an open ball just below the closed one of the same
// radius, then by center
bool operator<(const FiniteBall& a, const FiniteBall& b);

// Admissibility against the attached level data: closed radii from the
// spectrum with zero, open radii from the declared left limits or infinity
// over an unbounded spectrum.
bool is_perfect_ball(const UltraSpace& s, const FiniteBall& b);

std::vector<int> ball_points(const UltraSpace& s, const FiniteBall& b);

FiniteBall canonical_ball(const UltraSpace& s, const FiniteBall& b);

// Ambient containment: radius-kind order plus the center falling inside.
bool ball_contains(const UltraSpace& s, const FiniteBall& outer, const FiniteBall& inner);

// Upward closed family of perfect balls, the finite presentation of a
// woolly subtree: members in canonical form, sorted, always containing the
// whole-space ball at the top.
struct WoollySubtree {
  UltraSpace space;
  std::vector<FiniteBall> balls;
};

// Smallest woolly subtree containing the generators: every perfect ball
// above a generator, canonically centered.
WoollySubtree dilative_closure(const UltraSpace& s, const std::vector<FiniteBall>& gens);

bool subtree_contains(const WoollySubtree& w, const FiniteBall& b);
bool subtree_eq(const WoollySubtree& a, const WoollySubtree& b);
WoollySubtree subtree_intersection(const WoollySubtree& a, const WoollySubtree& b);

// Height-preserving partial isomorphism between woolly subtrees: ball i of
// the domain maps to images[i], preserving kind, radius, and containment.
struct GammaElement {
  WoollySubtree dom;
  std::vector<FiniteBall> images;
};

void validate_gamma(const GammaElement& g);

GammaElement identity_gamma(const WoollySubtree& w);

// The image side as a woolly subtree of its own.
WoollySubtree gamma_image(const GammaElement& g);

// The inverse partial isomorphism; domain and image swap roles.
GammaElement gamma_inverse(const GammaElement& g);

bool gamma_eq(const GammaElement& a, const GammaElement& b);
bool is_identity_gamma(const GammaElement& g);

// b after a; the domain shrinks to the part of dom(a) that a sends into
// dom(b), which is again upward closed.
GammaElement compose_gamma(const GammaElement& b, const GammaElement& a);

// Restriction of a configuration isometry to a woolly subtree.  g lists the
// image index per point, -1 where unknown; every domain ball needs at least
// one known member.
GammaElement group_shadow(const UltraSpace& s, const std::vector<int>& g,
                          const WoollySubtree& w);

}  // namespace ultracat
