#pragma once

#include "ultracat/amalgam.hpp"
#include "ultracat/space.hpp"
#include "ultracat/urysohn.hpp"

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ultracat {

// Deterministic generators behind the randomized suites.  Everything draws
// from the caller's engine, so one seed fixes an entire report.

// Model point supported on the pool values; the coordinate range widens with
// `spread` so larger distinct families stay reachable.
NguyenPoint random_point(std::mt19937_64& rng, const std::vector<Rat>& pool,
                         long long spread = 2);

// n pairwise distinct model points.
std::vector<NguyenPoint> random_configuration(std::mt19937_64& rng, int n,
                                              const std::vector<Rat>& pool);

// Random ultrametric space with spectrum inside the pool, realized as a
// model configuration; labels prefix1, prefix2, ...
UltraSpace random_space(std::mt19937_64& rng, int n, const std::vector<Rat>& pool,
                        const std::string& prefix = "p");

// Random morphism between freshly drawn spaces, and a composable pair
// sharing its middle configuration.
Morphism random_morphism(std::mt19937_64& rng, const std::vector<Rat>& pool, int nx,
                         int ny);
std::pair<Morphism, Morphism> random_chain(std::mt19937_64& rng,
                                           const std::vector<Rat>& pool, int nx, int ny,
                                           int nz);

// Random model isometry: a list of theta translations and germ swaps.
ModelIsometry random_isometry(std::mt19937_64& rng, const std::vector<Rat>& pool,
                              int moves);

// Random nonempty subset of {1, ..., top}, at most max_size values, ascending.
std::vector<Rat> random_pool(std::mt19937_64& rng, int top, int max_size);

}  // namespace ultracat
