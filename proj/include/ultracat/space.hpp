#pragma once

#include "ultracat/lambda.hpp"
#include "ultracat/rat.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ultracat {

// Finite ultrametric space with named points and an exact distance matrix.
// Immutable after construction.
struct UltraSpace {
  std::vector<std::string> labels;
  std::vector<Rat> dist;  // row-major n*n
  std::optional<LambdaSpec> lambda;

  int n() const { return static_cast<int>(labels.size()); }
  const Rat& d(int i, int j) const { return dist[static_cast<size_t>(i) * labels.size() + j]; }
  Rat& d(int i, int j) { return dist[static_cast<size_t>(i) * labels.size() + j]; }
  int index_of(const std::string& label) const;  // -1 if absent
};

struct Violation {
  std::string kind;  // NonSymmetric | NonzeroDiagonal | TriangleViolation | NegativeDistance | ...
  int i = -1, j = -1, k = -1;
};

enum class BallKind { closed, open };

// Checks symmetry, zero diagonal, positivity off the diagonal and the
// ultrametric triangle inequality. Reports the lexicographically first
// offending triple.
std::variant<UltraSpace, Violation> validate_ultrametric(std::vector<std::string> labels,
                                                         std::vector<Rat> matrix);

// Same, but throws DomainError on failure. Used where a valid space is a precondition.
UltraSpace make_space(std::vector<std::string> labels, std::vector<Rat> matrix,
                      std::optional<LambdaSpec> lambda = std::nullopt);

// Ascending set of positive distances occurring in the space.
std::vector<Rat> spectrum(const UltraSpace& s);

// Blocks of the equivalence d(x,y) <= r (closed) or d(x,y) < r (open),
// ordered by least point index; each block ascending.
std::vector<std::vector<int>> ball_partition(const UltraSpace& s, const Rat& r, BallKind kind);

// Quotient by closed balls of radius h, with distances reduced by h.
// Block labels are the lex-first member label of each block.
UltraSpace level_quotient(const UltraSpace& s, const Rat& h);

// Restriction to a subset of point indices (ascending), keeping labels.
UltraSpace restrict_space(const UltraSpace& s, const std::vector<int>& idx);

// Isolation radius d_x = min distance from x to the rest; infinite for n=1.
ExtRat isolation(const UltraSpace& s, int x);

// True if perm (image list) preserves distances.
bool is_isometry(const UltraSpace& s, const std::vector<int>& perm);

}  // namespace ultracat
