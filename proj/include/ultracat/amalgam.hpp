#pragma once

#include "ultracat/dendro.hpp"
#include "ultracat/space.hpp"
#include "ultracat/urysohn.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ultracat {

// Arrow between two spaces: an amalgam P covered by isometric images of
// source and target. Two arrows are the same morphism iff their delta
// matrices d(plus(x), minus(y)) agree; canonical_key is the string form of
// that equivalence class.
struct Morphism {
  UltraSpace source, target;
  UltraSpace amal;
  std::vector<int> plus;   // source index -> amal index
  std::vector<int> minus;  // target index -> amal index
};

void validate_morphism(const Morphism& m);  // throws InvalidMorphism

Morphism identity_morphism(const UltraSpace& x);

struct Amalgamated {
  UltraSpace space;
  std::vector<int> from_x, from_y;
};

// Glue X and Y along the overlap pairs (x index, y index); cross distances
// are min over the overlap of max of the two legs.
Amalgamated amalgamate(const UltraSpace& x, const UltraSpace& y,
                       const std::vector<std::pair<int, int>>& overlap);

// |X| x |Y| matrix d(plus(x), minus(y)); determines the morphism.
std::vector<Rat> delta(const Morphism& m);
const Rat& delta_at(const Morphism& m, int x, int y);

// Rebuild a morphism from its delta matrix; zero entries glue points.
Morphism morphism_from_delta(const UltraSpace& x, const UltraSpace& y, std::vector<Rat> d);

// p: X -> Y then q: Y -> Z, via the amalgam of the two amalgams over Y
// restricted to the outer images.
Morphism compose(const Morphism& p, const Morphism& q);

// Same result computed directly by the min-max product of delta matrices;
// used as a second route in tests and hot loops.
Morphism compose_via_delta(const Morphism& p, const Morphism& q);
std::vector<Rat> delta_minmax(const Morphism& p, const Morphism& q);

Morphism involution(const Morphism& p);

// Complete invariant string: code of the amalgam tree with each leaf
// decorated by which source/target points it carries.
std::string canonical_key(const Morphism& m);

bool morphism_eq(const Morphism& a, const Morphism& b);

// Morphism X -> Y from model configurations: P is the configuration Y u gX.
Morphism morphism_from_configuration(const std::vector<NguyenPoint>& x_pts,
                                     const std::vector<NguyenPoint>& y_pts,
                                     const std::vector<NguyenPoint>& gx_pts,
                                     const std::vector<std::string>& x_labels,
                                     const std::vector<std::string>& y_labels);

// Height preserving isomorphism between ascending subtrees, stored by the
// lowest tree point of each covered branch.
struct PartialTreeIso {
  UltraSpace src, dst;
  std::vector<std::pair<TreePoint, TreePoint>> gens;
};

void validate_partial_iso(const PartialTreeIso& f);  // throws InvalidPartialIso

PartialTreeIso to_partial_iso(const Morphism& m);
Morphism from_partial_iso(const PartialTreeIso& f);

// psi after phi; domain = preimage under phi of (im phi intersect dom psi).
PartialTreeIso compose_partial(const PartialTreeIso& psi, const PartialTreeIso& phi);

// Reduced deterministic generator list (one per source point, minimal heights).
std::vector<std::pair<TreePoint, TreePoint>> canonical_gens(const PartialTreeIso& f);

bool partial_iso_eq(const PartialTreeIso& a, const PartialTreeIso& b);

}  // namespace ultracat
