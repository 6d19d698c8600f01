#pragma once

#include "ultracat/cmatrix.hpp"
#include "ultracat/endsemi.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace ultracat {

enum class PairKind { closed, open };

// Parameter of a one dimensional character of the level semigroup at one
// point: a ball shape (closed or open) and a radius.  Radius inf encodes the
// open ball exhausting an unbounded spectrum.
struct PerfectPair {
  PairKind kind = PairKind::closed;
  ExtRat radius{Rat(0)};
};

bool operator==(const PerfectPair& a, const PerfectPair& b);
bool operator<(const PerfectPair& a, const PerfectPair& b);  // closed first, then radius

// Indicator character: closed pairs pass levels up to and including the
// radius, open pairs only strictly below it.
int chi(const Rat& lambda, const PerfectPair& pair);

// All characters of the level semigroup cut at d: closed radii from the
// spectrum with 0, below d; open radii from the declared left limits, up to
// d; the infinite open pair when the spectrum is unbounded and d is too.
std::vector<PerfectPair> admissible_pairs(const LambdaSpec& lambda, const ExtRat& d);

// One pair per point; the ball it describes avoids the rest of the space.
using Labeling = std::vector<PerfectPair>;

// Every labeling of x (attached level set required).  Pairs whose ball would
// swallow the whole ambient space are excluded: they only occur for a single
// isolated point, and their data belongs to a smaller base.
std::vector<Labeling> labelings(const UltraSpace& x);

// (L . perm)(i) = L(perm[i]); the labeling carried along an isometry.
Labeling apply_iso_labeling(const Labeling& l, const std::vector<int>& perm);

struct LabelingOrbit {
  Labeling rep;                            // lexicographically least element
  std::vector<Labeling> elements;          // sorted
  std::vector<std::vector<int>> stabilizer;  // isometries fixing rep, sorted
};

std::vector<LabelingOrbit> orbit_decomposition(const UltraSpace& x,
                                               const std::vector<Labeling>& all);

// Finite *-representation of the endomorphism semigroup: functions on one
// labeling orbit with values in the space of an inner representation nu of
// the orbit stabilizer.  Isometries act through the section cocycle, level
// elements by 0/1 diagonal characters, everything else by zero.
struct FiniteRep {
  UltraSpace base;
  std::vector<Labeling> orbit;       // orbit[0] is the base point of the induction
  std::vector<std::vector<int>> stabilizer;
  std::map<std::vector<int>, CMatrix> nu;
  std::vector<std::vector<int>> section;  // orbit index -> isometry sending orbit[0] there
  int nu_dim = 0;
  int dim = 0;    // orbit size * nu_dim
  bool exact = false;  // all generator matrices have entries in {0,+-1,+-i}
};

// Builds the induced representation; nu must be defined exactly on the
// stabilizer of rep_label and be a unitary homomorphism (checked, throws
// NotARepresentation).
FiniteRep induced_rep(const UltraSpace& x, const Labeling& rep_label,
                      const std::map<std::vector<int>, CMatrix>& nu);

// Matrix of one isometry (block permutation twisted by nu) and of one level
// element (diagonal of chi products).
CMatrix rep_iso_matrix(const FiniteRep& rep, const std::vector<int>& perm);
CMatrix rep_near_unit_matrix(const FiniteRep& rep, const NearUnit& z);

// Matrix of an arbitrary endomorphism: iso part times level part when the
// classification succeeds, the zero matrix otherwise.
CMatrix rep_apply(const FiniteRep& rep, const Morphism& p);

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Verifies on the sample: multiplicativity against composition, adjoints
// against the involution, operator norms at most one, identity to identity.
CheckReport check_star_rep(const FiniteRep& rep, const std::vector<Morphism>& sample);

// Dimension of the space of matrices commuting with every isometry matrix
// and every single level generator; 1 certifies irreducibility.
int commutant_dimension(const FiniteRep& rep);

struct CensusEntry {
  Labeling orbit_rep;
  std::string orbit_code;
  long long stabilizer_order = 0;
  std::string nu_name;
  std::vector<std::complex<double>> nu_character;  // traces, stabilizer in sorted order
  int dim = 0;
  FiniteRep rep;
};

// Complete list of irreducible representations attached to x: one entry per
// labeling orbit and per irreducible of its stabilizer, from the stored
// tables of small groups (throws UnsupportedStabilizer otherwise).
std::vector<CensusEntry> irrep_census(const UltraSpace& x);

std::string labeling_code(const Labeling& l);

}  // namespace ultracat
