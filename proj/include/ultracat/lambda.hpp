#pragma once

#include "ultracat/rat.hpp"

#include <vector>

namespace ultracat {

// Finite encoding of a distance spectrum: the explicitly listed values plus
// flags describing its asymptotic shape. left_limits lists the values that
// are declared left accumulation points (approached from below by the
// spectrum); "inf" among them means the spectrum is unbounded above and
// accumulates at infinity.
struct LambdaSpec {
  std::vector<Rat> values;  // ascending, positive
  bool zero_is_limit = false;
  bool unbounded = false;
  std::vector<Rat> left_limits;  // finite declared limits, subset of values
  bool inf_left_limit = false;

  bool contains(const Rat& r) const {
    for (const auto& v : values)
      if (v == r) return true;
    return false;
  }

  // membership in the spectrum together with 0 or the declared limits
  bool in_plus0(const Rat& r) const {
    if (r == 0) return !zero_is_limit;
    return contains(r);
  }
  bool is_left_limit(const Rat& r) const {
    for (const auto& v : left_limits)
      if (v == r) return true;
    return false;
  }

  Rat max_value() const { return values.empty() ? Rat(0) : values.back(); }
};

// Throws DomainError("InvalidLambda") on a malformed spec.
void validate_lambda(const LambdaSpec& l);

}  // namespace ultracat
