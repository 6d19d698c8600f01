#pragma once

#include "ultracat/amalgam.hpp"

#include <string>
#include <variant>
#include <vector>

namespace ultracat {

// Endomorphism that keeps every point within its own isolation ball:
// delta(x,x) = lambdas[x] < d_x, off-diagonal entries forced to d(x,y).
struct NearUnit {
  UltraSpace space;
  std::vector<Rat> lambdas;
};

// kappa applied after the near unit; lambdas are indexed by the source
// point, so delta(x, kappa(x)) = z.lambdas[x].
struct NearAutomorphism {
  std::vector<int> kappa;
  NearUnit z;
};

struct NotNearAutomorphism {
  int certificate = -1;  // lex-first point with no admissible image, or whose image collides
  std::string reason;    // "no nearby target" | "collision"
};

using EndoClass = std::variant<NearAutomorphism, NotNearAutomorphism>;

// Throws InadmissibleLambda unless every lambdas[x] is an allowed level
// strictly below the isolation radius of x.
void validate_near_unit(const NearUnit& z);

Morphism near_unit_morphism(const NearUnit& z);

// Pointwise max; the near units form a commutative idempotent semigroup.
NearUnit near_unit_product(const NearUnit& z, const NearUnit& w);

// Graph morphism of an isometry: delta(x, y) = d(perm[x], y).
Morphism iso_morphism(const UltraSpace& x, const std::vector<int>& perm);

Morphism near_automorphism_morphism(const NearAutomorphism& a);

// Total classification of endomorphisms. For each source point there is at
// most one target point inside its own isolation ball; the classification
// succeeds iff every point has one and the assignment is injective (it is
// then automatically an isometry).
EndoClass classify_endo(const Morphism& p);

// p equals its involution and squares to itself.  Every idempotent is
// automatically self adjoint, so this is equivalent to p being idempotent.
// Symmetry alone is weaker: an involutive isometry has a symmetric coset
// matrix but squares to the identity.
bool is_selfadjoint_idempotent(const Morphism& p);

struct IdempotentFactorization {
  std::vector<int> y_indices;  // proper subset of source points, ascending
  Morphism t;                  // X -> Y with involution(t) after t = q
};

// Splits a self-adjoint idempotent that is not a near automorphism through
// a proper subspace: drops the highest missing branch of its domain tree.
IdempotentFactorization idempotent_factor(const Morphism& q);

// Every endomorphism of x with amalgam spectrum inside the attached level
// set, enumerated by coset matrices. Exhaustive oracle for small spaces.
std::vector<Morphism> all_endomorphisms(const UltraSpace& x);

// The coset matrices alone, cheaper when the caller only needs delta data.
std::vector<std::vector<Rat>> all_endo_deltas(const UltraSpace& x);

}  // namespace ultracat
